#include "fusiondepth/cli.hpp"

#include "fusiondepth/depth.hpp"
#include "fusiondepth/errors.hpp"
#include "fusiondepth/lie.hpp"
#include "fusiondepth/rep.hpp"
#include "fusiondepth/serialize.hpp"
#include "fusiondepth/tower.hpp"
#include "fusiondepth/verlinde.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace fusiondepth::cli {

using io::Json;

void Config::validate() const {
  if (character_cap == 0) throw InvalidConfig("character_cap must be positive");
  if (weyl_cap == 0) throw InvalidConfig("weyl_cap must be positive");
  for (const auto& [name, value] : tolerances) {
    if (!(value > 0.0 && value < 1e-3)) {
      throw InvalidConfig("tolerance '" + name + "' must lie in (0, 1e-3)");
    }
  }
}

double Config::tolerance(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it == tolerances.end()) throw InvalidConfig("unknown tolerance '" + name + "'");
  return it->second;
}

Config Config::from_json(const Json& j, Config base) {
  if (!j.is_object()) throw InvalidConfig("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "character_cap") {
        base.character_cap = value.get<std::size_t>();
      } else if (key == "weyl_cap") {
        base.weyl_cap = value.get<std::size_t>();
      } else if (key == "cache_path") {
        base.cache_path = value.get<std::string>();
      } else if (key == "tolerances") {
        for (const auto& [name, tol] : value.items()) {
          if (!base.tolerances.count(name)) throw InvalidConfig("unknown tolerance '" + name + "'");
          base.tolerances[name] = tol.get<double>();
        }
      } else {
        throw InvalidConfig("unknown config key '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw InvalidConfig(std::string("malformed config: ") + e.what());
  }
  base.validate();
  return base;
}

Config Config::from_json(const Json& j) { return from_json(j, Config{}); }

Config Config::from_file(const std::filesystem::path& path, Config base) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot read config file " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw InvalidConfig("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(j, std::move(base));
}

namespace {

// Errors that stem from what the user typed rather than from a computation.
bool is_usage_error(const Error& e) {
  return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidRank*>(&e) ||
         dynamic_cast<const InvalidConfig*>(&e) || dynamic_cast<const DimensionMismatch*>(&e);
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything one command needs about a simple type.
class Session {
 public:
  Session(const std::string& type, const Config& config, std::shared_ptr<rep::CharacterCache> cache)
      : rs_(std::make_unique<lie::RootSystem>(lie::SimpleType::parse(type))),
        store_(std::make_unique<rep::CharacterStore>(*rs_, config.character_cap, std::move(cache))) {}

  const lie::RootSystem& rs() const { return *rs_; }
  rep::CharacterStore& store() { return *store_; }
  lie::Weight weight(const std::string& text) const { return lie::Weight::parse(text, rs_->rank()); }

 private:
  std::unique_ptr<lie::RootSystem> rs_;
  std::unique_ptr<rep::CharacterStore> store_;
};

Json check(std::string name, bool pass, std::string detail) {
  return {{"name", std::move(name)}, {"pass", pass}, {"detail", std::move(detail)}};
}

Json skipped(std::string name, std::string why) {
  return {{"name", std::move(name)}, {"pass", true}, {"skipped", true}, {"detail", std::move(why)}};
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::pair<int, int> parse_levels(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int l = std::stoi(text, &used);
      if (used != text.size()) throw UsageError("--levels: cannot parse '" + text + "'");
      return {l, l};
    }
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw UsageError("--levels: cannot parse '" + text + "'");
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw UsageError("--levels: cannot parse '" + text + "'");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--levels: cannot parse '" + text + "'");
  }
}

// Fusion against the S-matrix oracle, and beta against the quantum dimension of W.
void oracle_checks(Session& s, const verlinde::FusionRing& ring, const Config& config, Json& checks) {
  std::optional<verlinde::SMatrixOracle> oracle;
  try {
    oracle = verlinde::smatrix_verlinde_oracle(s.rs(), ring.basis.level(), config.weyl_cap,
                                               config.tolerance("rounding"));
  } catch (const WeylGroupTooLarge& e) {
    checks.push_back(skipped("fusion_vs_smatrix", e.what()));
    checks.push_back(skipped("beta_vs_quantum_dimension", e.what()));
    return;
  }
  checks.push_back(check("fusion_vs_smatrix", oracle->n == ring.matrices,
                         "rounding residual " + fmt(oracle->rounding_residual)));
  const auto qdims = oracle->quantum_dimensions();
  double expected = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) expected += static_cast<double>(ring.w_class[i]) * qdims[i];
  try {
    const auto pf = tower::perron_frobenius(tower::bratteli_tower(ring, 1).stationary);
    const double diff = std::abs(pf.eigenvalue - expected);
    checks.push_back(check("beta_vs_quantum_dimension", diff < config.tolerance("pf"),
                           "beta " + fmt(pf.eigenvalue) + ", sum of quantum dimensions " + fmt(expected)));
  } catch (const NotIrreducible& e) {
    checks.push_back(check("beta_vs_quantum_dimension", false, e.what()));
  }
}

// Racah-Speiser against the character-product oracle on pairs of fundamentals.
Json classical_checks(Session& s) {
  constexpr double kMaxProductDimension = 1e5;
  Json checks = Json::array();
  const std::size_t n = s.rs().rank();
  int compared = 0;
  int skipped_pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto a = lie::Weight::fundamental(n, i);
      const auto b = lie::Weight::fundamental(n, j);
      const BigInt product = rep::weyl_dimension(s.rs(), a) * rep::weyl_dimension(s.rs(), b);
      if (product.convert_to<double>() > kMaxProductDimension) {
        ++skipped_pairs;
        continue;
      }
      const auto fast = rep::tensor_decompose(s.store(), a, b);
      const auto slow = rep::tensor_oracle(s.store(), a, b);
      if (fast != slow) {
        checks.push_back(check("tensor_oracle", false, "mismatch for " + a.to_string() + " x " + b.to_string()));
        return checks;
      }
      if (rep::decomposition_dimension(s.store(), fast) != product) {
        checks.push_back(check("tensor_dimension", false, "dimension not conserved for " + a.to_string() + " x " +
                                                              b.to_string()));
        return checks;
      }
      ++compared;
    }
  }
  checks.push_back(check("tensor_oracle", true,
                         std::to_string(compared) + " fundamental pairs agree, " + std::to_string(skipped_pairs) +
                             " skipped as too large"));
  return checks;
}

Json verify_case(Session& s, int level, const Config& config) {
  Json checks = Json::array();
  const auto report = depth::depth(s.store(), level);
  const auto bounds = depth::check_depth_bounds(s.rs(), level, report.depth);
  checks.push_back(check("depth_bounds", report.covered && bounds.pass,
                         "d = " + std::to_string(report.depth) + ", bounds [" + std::to_string(bounds.bounds.lower) +
                             ", " + std::to_string(bounds.bounds.upper) + "]"));

  // D_l sits inside B_k exactly when k reaches floor(l / min mark).
  const auto basis = verlinde::enumerate_level_weights(s.rs(), level);
  const Rational c = depth::min_mark(s.rs());
  const long threshold = static_cast<long>(boost::multiprecision::numerator(Rational(level) / c) /
                                           boost::multiprecision::denominator(Rational(level) / c));
  bool lemma = true;
  for (int k = 0; k <= level; ++k) {
    const bool inside = std::all_of(basis.weights().begin(), basis.weights().end(),
                                    [&](const lie::Weight& w) { return depth::epsilon(w) <= k; });
    if (inside != (k >= threshold)) lemma = false;
  }
  checks.push_back(check("level_weights_in_B_k", lemma, "threshold k = " + std::to_string(threshold)));

  const auto ring = verlinde::fusion_matrices(s.store(), level);
  const auto tower_report = tower::verify_tower_properties(ring, std::max(6, report.depth + 2));
  for (const auto& c2 : tower_report.checks) checks.push_back(check(c2.name, c2.pass, c2.detail));
  oracle_checks(s, ring, config, checks);
  return checks;
}

bool all_pass(const Json& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Json& c) { return c.at("pass").get<bool>(); });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Level-l fusion rings, subfactor depth and Bratteli towers for simple Lie types", "fusiondepth"};
  app.require_subcommand(1);
  std::string config_path;
  std::string cache_flag;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--cache", cache_flag, "character cache file (overrides config and environment)");

  std::string type;
  std::string lambda_text;
  std::string mu_text;
  int level = 0;
  int k = 0;
  int floors = 0;
  int floor = 0;
  bool use_oracle = false;
  bool classical = false;
  std::string format = "json";
  std::string types_text;
  std::string levels_text;

  auto* roots = app.add_subcommand("roots", "root system data");
  roots->require_subcommand(1);
  auto* roots_info = roots->add_subcommand("info", "Cartan matrix, norms, marks, dual Coxeter number");
  roots_info->add_option("type", type, "simple type, e.g. G2")->required();

  auto* tensor_cmd = app.add_subcommand("tensor", "decompose V(lambda) (x) V(mu)");
  tensor_cmd->add_option("type", type)->required();
  tensor_cmd->add_option("lambda", lambda_text, "comma-separated labels")->required();
  tensor_cmd->add_option("mu", mu_text, "comma-separated labels")->required();
  tensor_cmd->add_flag("--oracle", use_oracle, "use the character-product algorithm");

  auto* fusion_cmd = app.add_subcommand("fusion", "level-l fusion product");
  fusion_cmd->add_option("type", type)->required();
  fusion_cmd->add_option("level", level)->required();
  fusion_cmd->add_option("lambda", lambda_text)->required();
  fusion_cmd->add_option("mu", mu_text)->required();

  auto* table_cmd = app.add_subcommand("fusion-table", "all fusion coefficients at level l");
  table_cmd->add_option("type", type)->required();
  table_cmd->add_option("level", level)->required();

  auto* smatrix_cmd = app.add_subcommand("smatrix", "S-matrix and quantum dimensions at level l");
  smatrix_cmd->add_option("type", type)->required();
  smatrix_cmd->add_option("level", level)->required();

  auto* depth_cmd = app.add_subcommand("depth", "smallest k with D_l covered by the powers of W");
  depth_cmd->add_option("type", type)->required();
  depth_cmd->add_option("level", level)->required();
  depth_cmd->add_flag("--classical", classical, "grow supports with classical tensor products");

  auto* bk_cmd = app.add_subcommand("bk", "dominant weights with label sum at most k");
  bk_cmd->add_option("type", type)->required();
  bk_cmd->add_option("k", k)->required();

  auto* lp_cmd = app.add_subcommand("lpmax", "exact LP bound on the label sum of highest weights of W^k");
  lp_cmd->add_option("type", type)->required();
  lp_cmd->add_option("k", k)->required();

  auto* tower_cmd = app.add_subcommand("tower", "Bratteli diagram of the tower");
  tower_cmd->add_option("type", type)->required();
  tower_cmd->add_option("level", level)->required();
  tower_cmd->add_option("--floors", floors, "number of floors")->required();
  tower_cmd->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

  auto* trace_cmd = app.add_subcommand("trace", "Perron-Frobenius data and trace weights up to a floor");
  trace_cmd->add_option("type", type)->required();
  trace_cmd->add_option("level", level)->required();
  trace_cmd->add_option("--floor", floor, "last floor")->required();

  auto* verify_cmd = app.add_subcommand("verify", "depth bounds, tower properties and oracle agreement");
  verify_cmd->add_option("--types", types_text, "comma-separated types")->required();
  verify_cmd->add_option("--levels", levels_text, "a..b or a single level")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  std::shared_ptr<rep::CharacterCache> cache;
  Json result;
  int status = 0;
  try {
    Config config;
    if (!config_path.empty()) config = Config::from_file(config_path, config);
    if (const char* env = std::getenv(kCacheEnv); env && *env) config.cache_path = env;
    if (!cache_flag.empty()) config.cache_path = cache_flag;
    config.validate();
    if (!config.cache_path.empty()) {
      cache = std::make_shared<rep::CharacterCache>(config.cache_path);
      cache->load();
    }

    if (roots_info->parsed()) {
      const lie::RootSystem rs(lie::SimpleType::parse(type));
      result = io::to_json(rs);
      result["paper_ref"] = "Cartan data in Bourbaki numbering with (theta, theta) = 2";
    } else if (tensor_cmd->parsed()) {
      Session s(type, config, cache);
      const auto a = s.weight(lambda_text);
      const auto b = s.weight(mu_text);
      const auto d = use_oracle ? rep::tensor_oracle(s.store(), a, b) : rep::tensor_decompose(s.store(), a, b);
      result = {{"type", s.rs().type().name()},
                {"lambda", a.to_string()},
                {"mu", b.to_string()},
                {"method", use_oracle ? "character-product" : "racah-speiser"},
                {"terms", io::terms_json(d)},
                {"dimension", to_string(rep::decomposition_dimension(s.store(), d))},
                {"paper_ref", "highest weights of V(lambda) (x) V(mu)"}};
    } else if (fusion_cmd->parsed()) {
      Session s(type, config, cache);
      const auto a = s.weight(lambda_text);
      const auto b = s.weight(mu_text);
      result = {{"type", s.rs().type().name()},
                {"level", level},
                {"lambda", a.to_string()},
                {"mu", b.to_string()},
                {"terms", io::terms_json(verlinde::fuse(s.store(), level, a, b))},
                {"paper_ref", "level-l fusion by affine Weyl folding of the classical product"}};
    } else if (table_cmd->parsed()) {
      Session s(type, config, cache);
      result = io::to_json(verlinde::fusion_matrices(s.store(), level));
      result["paper_ref"] = "fusion coefficients of the level-l Verlinde ring";
    } else if (smatrix_cmd->parsed()) {
      Session s(type, config, cache);
      const auto basis = verlinde::enumerate_level_weights(s.rs(), level);
      const auto oracle = verlinde::smatrix_verlinde_oracle(s.rs(), level, config.weyl_cap, config.tolerance("rounding"));
      result = io::to_json(oracle, basis);
      result["type"] = s.rs().type().name();
      result["paper_ref"] = "modular S-matrix and Verlinde formula";
    } else if (depth_cmd->parsed()) {
      Session s(type, config, cache);
      result = io::to_json(depth::depth(s.store(), level,
                                        classical ? depth::SupportMode::Kind::classical : depth::SupportMode::Kind::level));
      result["paper_ref"] = "d(l) = min k with D_l equal to the highest weights of [W]^k";
    } else if (bk_cmd->parsed()) {
      const lie::RootSystem rs(lie::SimpleType::parse(type));
      const auto weights = depth::enumerate_B_k(rs, k);
      Json list = Json::array();
      for (const auto& w : weights) list.push_back(w.to_string());
      result = {{"type", rs.type().name()},
                {"k", k},
                {"count", weights.size()},
                {"weights", std::move(list)},
                {"paper_ref", "B_k: dominant weights with label sum at most k"}};
    } else if (lp_cmd->parsed()) {
      const lie::RootSystem rs(lie::SimpleType::parse(type));
      const Rational value = depth::lp_epsilon_max(rs, k);
      result = {{"type", rs.type().name()},
                {"k", k},
                {"value", to_string(value)},
                {"floor", to_string(BigInt(boost::multiprecision::numerator(value) /
                                           boost::multiprecision::denominator(value)))},
                {"paper_ref", "LP maximum of the label sum over highest weights of W^k"}};
    } else if (tower_cmd->parsed()) {
      Session s(type, config, cache);
      const auto ring = verlinde::fusion_matrices(s.store(), level);
      const auto t = tower::bratteli_tower(ring, floors);
      if (format == "dot") {
        out << tower::to_dot(t, ring);
        if (cache && cache->dirty()) cache->save();
        return 0;
      }
      result = io::to_json(t, ring);
      result["paper_ref"] = "inclusion matrices t_ij = dim Hom(V_i (x) W, V_j)";
    } else if (trace_cmd->parsed()) {
      if (floor < 0) throw UsageError("--floor must be non-negative");
      Session s(type, config, cache);
      const auto ring = verlinde::fusion_matrices(s.store(), level);
      const auto t = tower::bratteli_tower(ring, floor + 1);
      result = io::to_json(tower::trace_weights(t), t, ring);
      result["type"] = ring.type;
      result["level"] = level;
      result["floor"] = floor;
      result["paper_ref"] = "Perron-Frobenius Markov trace on the tower";
    } else if (verify_cmd->parsed()) {
      const auto types = split(types_text, ',');
      const auto [lo, hi] = parse_levels(levels_text);
      if (types.empty()) throw UsageError("--types: empty scope");
      if (lo < 1 || hi < lo) throw UsageError("--levels: empty scope '" + levels_text + "'");
      Json results = Json::array();
      bool pass = true;
      for (const auto& t : types) {
        Session s(t, config, cache);
        Json entry = {{"type", s.rs().type().name()}};
        try {
          entry["classical"] = classical_checks(s);
        } catch (const Error& e) {
          entry["classical"] = Json::array({check("error", false, e.kind() + ": " + e.what())});
        }
        pass = pass && all_pass(entry["classical"]);
        Json levels = Json::array();
        for (int l = lo; l <= hi; ++l) {
          Json checks;
          try {
            checks = verify_case(s, l, config);
          } catch (const Error& e) {
            checks = Json::array({check("error", false, e.kind() + ": " + e.what())});
          }
          const bool ok = all_pass(checks);
          pass = pass && ok;
          levels.push_back({{"level", l}, {"pass", ok}, {"checks", std::move(checks)}});
        }
        entry["levels"] = std::move(levels);
        results.push_back(std::move(entry));
      }
      result = {{"results", std::move(results)},
                {"pass", pass},
                {"scope", {{"types", types}, {"levels", {lo, hi}}}},
                {"paper_ref", "depth bounds, tower properties and fusion oracles"}};
      status = pass ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.kind() << ": " << e.what() << "\n";
    return is_usage_error(e) ? 2 : 1;
  }

  if (cache && cache->dirty()) {
    try {
      cache->save();
    } catch (const Error& e) {
      err << e.kind() << ": " << e.what() << "\n";
      return 1;
    }
  }
  out << result.dump(2) << "\n";
  return status;
}

}  // namespace fusiondepth::cli
