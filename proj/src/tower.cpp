#include "fusiondepth/tower.hpp"

#include "fusiondepth/errors.hpp"
#include "fusiondepth/lie.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <numeric>
#include <sstream>

namespace fusiondepth::tower {

namespace {

// Entry (i, j) is nonzero iff some summand of [W] sends V_i to V_j. Summands
// are taken one at a time so that signed classes cannot cancel.
IntMatrix reach_matrix(const FusionRing& ring) {
  const auto m = static_cast<Eigen::Index>(ring.size());
  IntMatrix r = IntMatrix::Identity(m, m);
  for (const auto& cls : ring.fundamental_classes) {
    if (cls) r += ring.matrices[ring.basis.index_of(cls->weight)].cwiseAbs();
  }
  return r;
}

std::vector<std::size_t> grow(const IntMatrix& reach, const std::vector<std::size_t>& support) {
  std::vector<char> in(static_cast<std::size_t>(reach.rows()), 0);
  for (auto i : support) in[i] = 1;
  std::vector<char> next = in;
  for (auto i : support) {
    for (Eigen::Index j = 0; j < reach.cols(); ++j) {
      if (reach(static_cast<Eigen::Index>(i), j) != 0) next[static_cast<std::size_t>(j)] = 1;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < next.size(); ++j) {
    if (next[j]) out.push_back(j);
  }
  return out;
}

InclusionMatrix restrict_matrix(const IntMatrix& full, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
  InclusionMatrix out;
  out.entries.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      out.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          full(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(cols[b]));
    }
  }
  out.rows = std::move(rows);
  out.cols = std::move(cols);
  return out;
}

// Zero outside rows x cols.
IntMatrix mask(const IntMatrix& full, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  return restrict_matrix(full, rows, cols).embedded(static_cast<std::size_t>(full.rows()));
}

bool strongly_connected(const IntMatrix& t) {
  const auto m = t.rows();
  for (Eigen::Index start = 0; start < m; ++start) {
    std::vector<char> seen(static_cast<std::size_t>(m), 0);
    std::vector<Eigen::Index> stack{start};
    seen[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      for (Eigen::Index j = 0; j < m; ++j) {
        if (t(i, j) != 0 && !seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = 1;
          stack.push_back(j);
        }
      }
    }
    if (std::count(seen.begin(), seen.end(), 1) != m) return false;
  }
  return true;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

}  // namespace

IntMatrix InclusionMatrix::embedded(std::size_t m) const {
  const auto n = static_cast<Eigen::Index>(m);
  IntMatrix out = IntMatrix::Zero(n, n);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      out(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(cols[b])) =
          entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> floor_supports(const FusionRing& ring, int last) {
  if (last < 0) throw NegativeLevel("floor index must be non-negative");
  const IntMatrix reach = reach_matrix(ring);
  std::vector<std::vector<std::size_t>> out{{0}};
  for (int k = 1; k <= last; ++k) out.push_back(grow(reach, out.back()));
  return out;
}

InclusionMatrix inclusion_matrix(const FusionRing& ring, int k) {
  auto supports = floor_supports(ring, k + 1);
  return restrict_matrix(ring.w_matrix(), std::move(supports[static_cast<std::size_t>(k)]),
                         std::move(supports[static_cast<std::size_t>(k) + 1]));
}

std::vector<BigInt> BratteliTower::full_dims(std::size_t k, std::size_t m) const {
  std::vector<BigInt> out(m, BigInt(0));
  const Floor& f = floors.at(k);
  for (std::size_t a = 0; a < f.support.size(); ++a) out[f.support[a]] = f.dims[a];
  return out;
}

BratteliTower bratteli_tower(const FusionRing& ring, int floors) {
  if (floors < 1) throw DimensionMismatch("a tower needs at least one floor");
  const std::size_t m = ring.size();
  const IntMatrix t = ring.w_matrix();
  const auto supports = floor_supports(ring, floors);

  BratteliTower tower;
  tower.type = ring.type;
  tower.level = ring.basis.level();
  tower.stationary_from = -1;

  std::vector<BigInt> dims{BigInt(1)};
  for (int k = 0; k < floors; ++k) {
    const auto& here = supports[static_cast<std::size_t>(k)];
    const auto& next = supports[static_cast<std::size_t>(k) + 1];
    if (tower.stationary_from < 0 && here.size() == m) tower.stationary_from = k;
    Floor floor;
    floor.support = here;
    floor.dims = dims;
    floor.to_next = restrict_matrix(t, here, next);
    std::vector<BigInt> following(next.size(), BigInt(0));
    for (std::size_t a = 0; a < here.size(); ++a) {
      for (std::size_t b = 0; b < next.size(); ++b) {
        const auto e = floor.to_next.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (e != 0) following[b] += dims[a] * e;
      }
    }
    dims = std::move(following);
    tower.floors.push_back(std::move(floor));
  }
  if (tower.stationary_from < 0) {
    // Keep walking the supports until they fill the basis.
    auto s = supports.back();
    const IntMatrix reach = reach_matrix(ring);
    int k = floors;
    while (s.size() < m) {
      auto bigger = grow(reach, s);
      if (bigger.size() == s.size()) break;
      s = std::move(bigger);
      ++k;
    }
    tower.stationary_from = s.size() == m ? k : -1;
  }
  std::vector<std::size_t> all(m);
  std::iota(all.begin(), all.end(), std::size_t{0});
  tower.stationary = restrict_matrix(t, all, all);
  return tower;
}

PerronFrobenius perron_frobenius(const InclusionMatrix& t) {
  if (!t.is_square() || t.rows.empty()) throw NotIrreducible("Perron-Frobenius needs a non-empty square matrix");
  const IntMatrix& a = t.entries;
  if ((a.array() < 0).any()) throw NotIrreducible("matrix has negative entries");
  if (!strongly_connected(a)) throw NotIrreducible("matrix graph is not strongly connected");

  const Eigen::MatrixXd ad = a.cast<double>();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(ad.rows());
  double previous = 0.0;
  constexpr int kMaxIterations = 1'000'000;
  constexpr double kTolerance = 1e-12;
  for (int it = 1; it <= kMaxIterations; ++it) {
    const Eigen::VectorXd y = ad * x;
    const double rq = x.dot(y) / x.dot(x);
    const double residual = (y - rq * x).lpNorm<Eigen::Infinity>() / x.lpNorm<Eigen::Infinity>();
    if (it > 1 && std::abs(rq - previous) < kTolerance && residual < kTolerance * std::max(1.0, rq)) {
      PerronFrobenius out;
      out.eigenvalue = rq;
      out.iterations = it;
      const double pivot = x[0];
      for (Eigen::Index i = 0; i < x.size(); ++i) out.vector.push_back(x[i] / pivot);
      return out;
    }
    previous = rq;
    x = y / y.lpNorm<Eigen::Infinity>();
  }
  throw NonConvergence("power iteration did not converge");
}

TraceData trace_weights(const BratteliTower& tower) {
  if (tower.stationary_from < 0) throw NotIrreducible("tower never reaches full support");
  const auto pf = perron_frobenius(tower.stationary);
  TraceData out;
  out.pf_eigenvalue = pf.eigenvalue;
  out.pf_vector = pf.vector;
  double scale = 1.0;
  for (const auto& floor : tower.floors) {
    std::vector<double> w;
    w.reserve(floor.support.size());
    for (auto i : floor.support) w.push_back(pf.vector[i] / scale);
    out.floor_weights.push_back(std::move(w));
    scale *= pf.eigenvalue;
  }
  return out;
}

PowerIndex minimal_power_index(const FusionRing& ring, std::size_t i) {
  if (i >= ring.size()) throw WeightNotInLevel("basis index " + std::to_string(i) + " out of range");
  const IntMatrix reach = reach_matrix(ring);
  std::vector<std::size_t> s{0};
  for (int k = 0;; ++k) {
    if (std::binary_search(s.begin(), s.end(), i)) return {k, k % 2};
    auto bigger = grow(reach, s);
    if (bigger.size() == s.size()) throw InternalError("basis element never appears in a power of W");
    s = std::move(bigger);
  }
}

bool TowerReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

struct TowerContext {
  const FusionRing& ring;
  lie::RootSystem rs;
  std::size_t m;
  IntMatrix t;
  int depth;
  int max_floor;
  std::vector<std::vector<std::size_t>> supports;

  IntMatrix floor_matrix(int k) const {
    return mask(t, supports[static_cast<std::size_t>(k)], supports[static_cast<std::size_t>(k) + 1]);
  }
};

IntMatrix power(const IntMatrix& t, int j) {
  IntMatrix out = IntMatrix::Identity(t.rows(), t.cols());
  for (int s = 0; s < j; ++s) out = out * t;
  return out;
}

Check check_symmetry(const TowerContext& c) {
  return {"stationary_symmetric", c.t == c.t.transpose(), "T has size " + std::to_string(c.m)};
}

Check check_irreducible(const TowerContext& c) {
  IntMatrix p = c.t;
  IntMatrix sum = IntMatrix::Zero(c.t.rows(), c.t.cols());
  for (std::size_t s = 1; s <= c.m; ++s) {
    sum += p;
    // Only the zero pattern matters; clamp to keep the entries small.
    p = (p * c.t).unaryExpr([](std::int64_t v) -> std::int64_t { return v != 0 ? 1 : 0; });
  }
  const bool positive = (sum.array() > 0).all();
  return {"irreducible", positive, positive ? "sum of T^s for s <= m is positive" : "some entry of sum T^s is zero"};
}

Check check_stationarity(const TowerContext& c) {
  for (int k = c.depth; k <= c.max_floor; ++k) {
    if (c.floor_matrix(k) != c.t) {
      return {"stationarity", false, "T(" + std::to_string(k) + ") differs from T"};
    }
  }
  return {"stationarity", true,
          "T(k) = T for " + std::to_string(c.depth) + " <= k <= " + std::to_string(c.max_floor)};
}

Check check_dominance(const TowerContext& c) {
  for (int k = 0; k < c.max_floor; ++k) {
    const IntMatrix diff = c.floor_matrix(k + 1) - c.floor_matrix(k).transpose();
    if ((diff.array() < 0).any()) {
      return {"basic_construction", false, "T(" + std::to_string(k + 1) + ") - T(" + std::to_string(k) + ")^t has a negative entry"};
    }
  }
  return {"basic_construction", true, "T(k+1) - T(k)^t >= 0 for k < " + std::to_string(c.max_floor)};
}

constexpr int kMaxVerticalSteps = 3;

Check check_commuting_squares(const TowerContext& c) {
  int checked = 0;
  int early_total = 0;
  int early_hold = 0;
  for (int k = 0; k < c.max_floor; ++k) {
    for (int j = 1; j <= kMaxVerticalSteps; ++j) {
      const auto& sk = c.supports[static_cast<std::size_t>(k)];
      const auto& sk1 = c.supports[static_cast<std::size_t>(k) + 1];
      const auto& sjk = c.supports[static_cast<std::size_t>(j + k)];
      const auto& sjk1 = c.supports[static_cast<std::size_t>(j + k) + 1];
      const IntMatrix tj = power(c.t, j);
      const IntMatrix lhs = c.floor_matrix(k).transpose() * mask(tj, sk, sjk);
      const IntMatrix rhs = mask(tj, sk1, sjk1) * c.floor_matrix(j + k).transpose();
      const bool holds = lhs == rhs;
      if (k >= c.depth) {
        if (!holds) {
          return {"commuting_square", false,
                  "relation fails at k = " + std::to_string(k) + ", j = " + std::to_string(j)};
        }
        ++checked;
      } else {
        ++early_total;
        if (holds) ++early_hold;
      }
    }
  }
  return {"commuting_square", true,
          std::to_string(checked) + " stationary squares hold; before stationarity " + std::to_string(early_hold) +
              " of " + std::to_string(early_total) + " hold"};
}

Check check_trace(const TowerContext& c, int floors) {
  const auto tower = bratteli_tower(c.ring, floors);
  const auto trace = trace_weights(tower);
  const double beta = trace.pf_eigenvalue;
  double worst_norm = 0.0;
  double worst_markov = 0.0;
  double worst_compat = 0.0;
  for (std::size_t k = 0; k < tower.floors.size(); ++k) {
    const auto& floor = tower.floors[k];
    double total = 0.0;
    for (std::size_t a = 0; a < floor.support.size(); ++a) {
      total += floor.dims[a].convert_to<double>() * trace.floor_weights[k][a];
    }
    worst_norm = std::max(worst_norm, std::abs(total - 1.0));
    if (k + 1 == tower.floors.size()) break;
    const auto& next = tower.floors[k + 1];
    const auto& w = trace.floor_weights[k];
    const auto& wn = trace.floor_weights[k + 1];
    for (std::size_t a = 0; a < floor.support.size(); ++a) {
      const auto pos = std::lower_bound(next.support.begin(), next.support.end(), floor.support[a]);
      const double scaled = wn[static_cast<std::size_t>(pos - next.support.begin())];
      worst_markov = std::max(worst_markov, std::abs(scaled - w[a] / beta) / w[a]);
      double sum = 0.0;
      for (std::size_t b = 0; b < next.support.size(); ++b) {
        sum += static_cast<double>(floor.to_next.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))) * wn[b];
      }
      worst_compat = std::max(worst_compat, std::abs(sum - w[a]) / w[a]);
    }
  }
  std::ostringstream detail;
  detail << "beta = " << beta << ", max |sum dim*weight - 1| = " << worst_norm << ", markov error = " << worst_markov
         << ", restriction error = " << worst_compat << " over " << floors << " floors";
  const bool pass = worst_norm < 1e-9 && worst_markov < 1e-12 && worst_compat < 1e-9;
  return {"markov_trace", pass, detail.str()};
}

Check check_fusion_realization(const TowerContext& c) {
  const auto m = static_cast<Eigen::Index>(c.m);
  std::vector<std::string> failures;

  // Powers of T expand over the basis with coefficients read off row 0.
  IntMatrix tk = IntMatrix::Identity(m, m);
  for (int k = 0; k <= c.max_floor; ++k) {
    IntMatrix combo = IntMatrix::Zero(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      if (tk(0, j) != 0) combo += tk(0, j) * c.ring.matrices[static_cast<std::size_t>(j)];
    }
    if (combo != tk) failures.push_back("T^" + std::to_string(k) + " is not the combination of its row 0");
    tk = tk * c.t;
  }

  // Rebuild every N_mu from the fundamentals by peeling the top term of
  // N_(mu - omega_f) N_(omega_f), in increasing |mu + rho|^2.
  std::vector<std::size_t> order(c.m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto norm = [&](std::size_t i) {
    const auto shifted = c.ring.basis[i] + c.rs.rho();
    return c.rs.scaled_product(shifted, shifted);
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norm(a) < norm(b); });
  std::vector<std::optional<IntMatrix>> built(c.m);
  built[0] = IntMatrix::Identity(m, m);
  const std::size_t n = c.rs.rank();
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = c.ring.basis.find(lie::Weight::fundamental(n, i));
    if (f) built[*f] = c.ring.matrices[*f];
  }
  for (auto mu_index : order) {
    if (built[mu_index]) continue;
    const auto& mu = c.ring.basis[mu_index];
    std::size_t f = 0;
    while (mu[f] == 0) ++f;
    const auto fundamental = lie::Weight::fundamental(n, f);
    const auto lower = c.ring.basis.index_of(mu - fundamental);
    const auto fi = c.ring.basis.index_of(fundamental);
    if (!built[lower]) {
      failures.push_back("N_" + c.ring.basis[lower].to_string() + " needed before it was built");
      continue;
    }
    IntMatrix product = *built[lower] * *built[fi];
    bool ok = true;
    for (std::size_t k = 0; k < c.m && ok; ++k) {
      const auto coeff = c.ring.coefficient(lower, fi, k);
      if (k == mu_index || coeff == 0) continue;
      if (!built[k]) {
        failures.push_back("term " + c.ring.basis[k].to_string() + " of N_" + mu.to_string() + " not yet built");
        ok = false;
        break;
      }
      product -= coeff * *built[k];
    }
    if (!ok) continue;
    const auto top = c.ring.coefficient(lower, fi, mu_index);
    if (top != 1) {
      failures.push_back("leading coefficient of N_" + mu.to_string() + " is " + std::to_string(top));
      continue;
    }
    built[mu_index] = product;
  }
  for (std::size_t i = 0; i < c.m; ++i) {
    if (built[i] && *built[i] != c.ring.matrices[i]) {
      failures.push_back("rebuilt N_" + c.ring.basis[i].to_string() + " differs");
    }
  }

  // Floors are additive: V_k in V_i (x) V_j forces k_k <= k_i + k_j.
  std::vector<int> first(c.m, -1);
  for (std::size_t k = 0; k < c.supports.size(); ++k) {
    for (auto i : c.supports[k]) {
      if (first[i] < 0) first[i] = static_cast<int>(k);
    }
  }
  for (std::size_t i = 0; i < c.m; ++i) {
    for (std::size_t j = 0; j < c.m; ++j) {
      for (std::size_t k = 0; k < c.m; ++k) {
        if (c.ring.coefficient(i, j, k) > 0 && first[k] > first[i] + first[j]) {
          failures.push_back("floor of " + c.ring.basis[k].to_string() + " exceeds the sum of its factors' floors");
        }
      }
    }
  }
  if (failures.size() > 5) failures.resize(5);
  return {"fusion_realization", failures.empty(),
          failures.empty() ? "every N_i rebuilt from the fundamental classes" : join(failures)};
}

Check check_duality(const TowerContext& c) {
  for (std::size_t i = 0; i < c.m; ++i) {
    if (c.ring.w_class[c.ring.dual[i]] != c.ring.w_class[i]) {
      return {"duality", false, "duality moves " + c.ring.basis[i].to_string() + " off the classes of W"};
    }
  }
  return {"duality", true, "duality permutes the summands of W"};
}

Check check_commutativity(const TowerContext& c) {
  for (std::size_t i = 0; i < c.m; ++i) {
    for (std::size_t j = i + 1; j < c.m; ++j) {
      for (std::size_t k = 0; k < c.m; ++k) {
        if (c.ring.coefficient(i, j, k) != c.ring.coefficient(j, i, k)) {
          return {"commutativity", false, "m_ij^k differs from m_ji^k"};
        }
      }
    }
  }
  return {"commutativity", true, "m_ij^k = m_ji^k"};
}

}  // namespace

constexpr int kTraceFloors = 10;

TowerReport verify_tower_properties(const FusionRing& ring, int max_floor) {
  TowerContext ctx{ring, lie::RootSystem(lie::SimpleType::parse(ring.type)), ring.size(), ring.w_matrix(), 0, 0, {}};
  const IntMatrix reach = reach_matrix(ring);
  std::vector<std::size_t> s{0};
  while (s.size() < ctx.m) {
    auto bigger = grow(reach, s);
    if (bigger.size() == s.size()) break;
    s = std::move(bigger);
    ++ctx.depth;
  }
  TowerReport report;
  report.depth = ctx.depth;
  if (s.size() < ctx.m) {
    report.checks.push_back({"full_support", false, "the powers of W never cover the basis"});
    return report;
  }
  ctx.max_floor = std::max(max_floor, ctx.depth + 2);
  report.max_floor = ctx.max_floor;
  ctx.supports = floor_supports(ring, ctx.max_floor + kMaxVerticalSteps + 1);

  const std::vector<std::function<Check()>> tasks{
      [&] { return check_symmetry(ctx); },
      [&] { return check_irreducible(ctx); },
      [&] { return check_stationarity(ctx); },
      [&] { return check_dominance(ctx); },
      [&] { return check_commuting_squares(ctx); },
      [&] { return check_trace(ctx, std::max(kTraceFloors, ctx.max_floor + 1)); },
      [&] { return check_fusion_realization(ctx); },
      [&] { return check_duality(ctx); },
      [&] { return check_commutativity(ctx); },
  };
  std::vector<std::future<Check>> running;
  for (const auto& task : tasks) running.push_back(std::async(std::launch::async, task));
  for (auto& r : running) {
    try {
      report.checks.push_back(r.get());
    } catch (const Error& e) {
      report.checks.push_back({"error", false, e.kind() + ": " + e.what()});
    }
  }
  return report;
}

std::string to_dot(const BratteliTower& tower, const FusionRing& ring) {
  std::ostringstream out;
  auto node = [](std::size_t k, std::size_t i) { return "f" + std::to_string(k) + "_" + std::to_string(i); };
  out << "digraph bratteli {\n";
  out << "  label=\"" << tower.type << " level " << tower.level << "\";\n";
  out << "  rankdir=TB;\n";
  for (std::size_t k = 0; k < tower.floors.size(); ++k) {
    const auto& floor = tower.floors[k];
    out << "  { rank=same;";
    for (std::size_t a = 0; a < floor.support.size(); ++a) {
      const auto i = floor.support[a];
      out << " " << node(k, i) << " [label=\"(" << ring.basis[i].to_string() << ")\\n" << floor.dims[a] << "\"];";
    }
    out << " }\n";
  }
  for (std::size_t k = 0; k + 1 < tower.floors.size(); ++k) {
    const auto& t = tower.floors[k].to_next;
    for (std::size_t a = 0; a < t.rows.size(); ++a) {
      for (std::size_t b = 0; b < t.cols.size(); ++b) {
        const auto e = t.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (e == 0) continue;
        out << "  " << node(k, t.rows[a]) << " -> " << node(k + 1, t.cols[b]) << " [label=\"" << e << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace fusiondepth::tower
