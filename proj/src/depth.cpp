#include "fusiondepth/depth.hpp"

#include "fusiondepth/errors.hpp"
#include "fusiondepth/simplex.hpp"
#include "fusiondepth/verlinde.hpp"

#include <algorithm>

namespace fusiondepth::depth {

namespace {

long ceil_div(long a, long b) { return (a + b - 1) / b; }

}  // namespace

long epsilon(const Weight& lambda) { return lambda.label_sum(); }

std::vector<Weight> enumerate_B_k(const RootSystem& rs, int k) {
  std::vector<Weight> out;
  if (k < 0) return out;
  const std::size_t n = rs.rank();
  Weight current(n);
  auto recurse = [&](auto&& self, std::size_t i, int budget) -> void {
    if (i == n) {
      out.push_back(current);
      return;
    }
    for (int x = 0; x <= budget; ++x) {
      current[i] = x;
      self(self, i + 1, budget - x);
    }
    current[i] = 0;
  };
  recurse(recurse, 0, k);
  std::sort(out.begin(), out.end());
  return out;
}

Rational min_mark(const RootSystem& rs) {
  Rational best = -1;
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    const Rational c = Rational(rs.marks()[i]) * rs.root_norms()[i] / 2;
    if (best < 0 || c < best) best = c;
  }
  return best;
}

Rational lp_epsilon_max(const RootSystem& rs, int k) {
  if (k < 0) throw NegativeLevel("lp_epsilon_max needs k >= 0");
  const std::size_t n = rs.rank();
  lp::Problem p;
  // Variables: x_1..x_n then y_1..y_n.
  p.objective.assign(2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    p.objective[i] = 1;
    p.objective[n + i] = -Rational(rs.simple_root(i).label_sum());
  }
  std::vector<Rational> total(2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) total[i] = 1;
  p.constraints.push_back(total);
  p.bounds.push_back(k);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> row(2 * n, Rational(0));
    row[j] = -1;
    for (std::size_t i = 0; i < n; ++i) row[n + i] = rs.cartan(i, j);
    p.constraints.push_back(std::move(row));
    p.bounds.push_back(0);
  }
  try {
    return lp::maximize(p).value;
  } catch (const Unbounded&) {
    throw InternalError("epsilon LP is unbounded for " + rs.type().name());
  }
}

namespace {

// Incremental S_0, S_1, ...: only weights that entered in the previous step
// can contribute new highest weights.
class SupportGrowth {
 public:
  SupportGrowth(rep::CharacterStore& store, SupportMode mode) : store_(store), mode_(mode) {
    const RootSystem& rs = store.root_system();
    const std::size_t n = rs.rank();
    if (mode.kind == SupportMode::Kind::level) {
      if (mode.level < 0) throw NegativeLevel("level must be non-negative");
      for (const auto& cls : verlinde::fundamental_classes(rs, mode.level)) {
        if (cls) factors_.push_back(cls->weight);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) factors_.push_back(Weight::fundamental(n, i));
    }
    support_.insert(Weight::zero(n));
    frontier_.push_back(Weight::zero(n));
  }

  const std::set<Weight>& support() const noexcept { return support_; }
  const std::vector<Weight>& last_added() const noexcept { return frontier_; }
  int k() const noexcept { return k_; }

  void step() {
    std::vector<Weight> added;
    for (const auto& lambda : frontier_) {
      for (const auto& f : factors_) {
        const auto d = mode_.kind == SupportMode::Kind::level ? verlinde::fuse(store_, mode_.level, lambda, f)
                                                              : rep::tensor_decompose(store_, lambda, f);
        for (const auto& [w, m] : d) {
          if (m != 0 && support_.insert(w).second) added.push_back(w);
        }
      }
    }
    std::sort(added.begin(), added.end());
    frontier_ = std::move(added);
    ++k_;
  }

 private:
  rep::CharacterStore& store_;
  SupportMode mode_;
  std::vector<Weight> factors_;
  std::set<Weight> support_;
  std::vector<Weight> frontier_;
  int k_ = 0;
};

}  // namespace

std::vector<SupportSet> support_sequence(rep::CharacterStore& store, int k, SupportMode mode) {
  if (k < 0) throw NegativeLevel("support power needs k >= 0");
  SupportGrowth growth(store, mode);
  std::vector<SupportSet> seq{{growth.support(), 0, mode}};
  for (int step = 1; step <= k; ++step) {
    growth.step();
    seq.push_back({growth.support(), step, mode});
  }
  return seq;
}

SupportSet support_power(rep::CharacterStore& store, int k, SupportMode mode) {
  return support_sequence(store, k, mode).back();
}

DepthBounds depth_bounds(const RootSystem& rs, int level) {
  const long l = level;
  const long n = rs.type().rank();
  switch (rs.type().family()) {
    case lie::Family::A:
    case lie::Family::C:
      return {l, l};
    case lie::Family::B:
      return n == 2 ? DepthBounds{l, l} : DepthBounds{ceil_div(2 * l, n), l};
    case lie::Family::D:
      return {ceil_div(2 * l, n - 1), l};
    case lie::Family::E:
      if (n == 6) return {ceil_div(l, 3), l};
      if (n == 7) return {ceil_div(l, 5), l};
      return {ceil_div(4 * l, 15), l / 2};
    case lie::Family::F:
      return {ceil_div(2 * l, 5), l};
    case lie::Family::G:
      return {ceil_div(2 * l, 3), l};
  }
  return {};
}

BoundCheck check_depth_bounds(const RootSystem& rs, int level, int depth) {
  BoundCheck out;
  out.bounds = depth_bounds(rs, level);
  out.depth = depth;
  out.pass = out.bounds.lower <= depth && depth <= out.bounds.upper;
  return out;
}

DepthReport depth(rep::CharacterStore& store, int level, SupportMode::Kind mode) {
  const RootSystem& rs = store.root_system();
  if (level < 1) throw NegativeLevel("depth needs level >= 1");
  const auto basis = verlinde::enumerate_level_weights(rs, level);
  const std::set<Weight> target(basis.weights().begin(), basis.weights().end());
  const SupportMode support_mode =
      mode == SupportMode::Kind::level ? SupportMode::at_level(level) : SupportMode::classical();

  DepthReport report;
  report.type = rs.type().name();
  report.level = level;
  report.mode = support_mode;
  report.bounds = depth_bounds(rs, level);
  if (mode == SupportMode::Kind::level) verlinde::fundamental_classes(rs, level, &report.warnings);

  auto covers = [&](const std::set<Weight>& s) {
    if (mode == SupportMode::Kind::level) return s == target;
    return std::includes(s.begin(), s.end(), target.begin(), target.end());
  };

  SupportGrowth growth(store, support_mode);
  bool warned = false;
  while (true) {
    const auto& s = growth.support();
    if (covers(s)) {
      report.covered = true;
      report.depth = growth.k();
      report.witness = Weight::zero(rs.rank());
      for (const auto& w : growth.last_added()) {
        if (target.count(w)) report.witness = w;
      }
      break;
    }
    if (growth.k() > 0 && growth.last_added().empty()) {
      report.depth = growth.k();
      report.warnings.push_back("support stabilised at k = " + std::to_string(growth.k()) +
                                " without covering D_" + std::to_string(level));
      break;
    }
    if (!warned && growth.k() >= report.bounds.upper) {
      report.warnings.push_back("D_" + std::to_string(level) + " not covered at the upper bound k = " +
                                std::to_string(report.bounds.upper));
      warned = true;
    }
    growth.step();
  }
  report.within_bounds = report.covered && report.bounds.lower <= report.depth && report.depth <= report.bounds.upper;
  return report;
}

}  // namespace fusiondepth::depth
