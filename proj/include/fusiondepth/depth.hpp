#pragma once

#include "fusiondepth/lie.hpp"
#include "fusiondepth/numeric.hpp"
#include "fusiondepth/rep.hpp"

#include <set>
#include <string>
#include <vector>

namespace fusiondepth::depth {

using lie::RootSystem;
using lie::Weight;

/// Sum of Dynkin labels.
long epsilon(const Weight& lambda);

/// Dominant weights with epsilon <= k, lexicographically sorted.
std::vector<Weight> enumerate_B_k(const RootSystem& rs, int k);

/// min_i marks[i] |alpha_i|^2 / 2.
Rational min_mark(const RootSystem& rs);

/// Exact maximum of epsilon(sum x_i omega_i - sum y_i alpha_i) over
/// x, y >= 0, sum x_i <= k, sum_i y_i A_ij <= x_j.
Rational lp_epsilon_max(const RootSystem& rs, int k);

struct SupportMode {
  enum class Kind { classical, level };
  Kind kind = Kind::level;
  int level = 0;

  static SupportMode classical() { return {Kind::classical, 0}; }
  static SupportMode at_level(int l) { return {Kind::level, l}; }
  std::string name() const { return kind == Kind::classical ? "classical" : "level"; }
};

/// Highest weights of W^(x)k (classical) or [W]^(x)k (level mode).
struct SupportSet {
  std::set<Weight> weights;
  int k = 0;
  SupportMode mode;
};

/// S_0 ... S_k. Each step adds the highest weights of V(lambda) (x) V(omega_i)
/// (or their level-l images) for the weights that entered in the previous step.
std::vector<SupportSet> support_sequence(rep::CharacterStore& store, int k, SupportMode mode);
SupportSet support_power(rep::CharacterStore& store, int k, SupportMode mode);

struct DepthBounds {
  long lower = 0;
  long upper = 0;
};

/// Lower and upper bounds on d(l) for the type of `rs`.
DepthBounds depth_bounds(const RootSystem& rs, int level);

struct BoundCheck {
  DepthBounds bounds;
  int depth = 0;
  bool pass = false;
};

BoundCheck check_depth_bounds(const RootSystem& rs, int level, int depth);

struct DepthReport {
  std::string type;
  int level = 0;
  int depth = 0;
  DepthBounds bounds;
  Weight witness;
  SupportMode mode;
  bool covered = false;
  bool within_bounds = false;
  std::vector<std::string> warnings;
};

/// Smallest k with D_l contained in the classical support of W^(x)k, or, in
/// level mode, with D_l equal to the support of [W]^(x)k.
DepthReport depth(rep::CharacterStore& store, int level, SupportMode::Kind mode = SupportMode::Kind::level);

}  // namespace fusiondepth::depth
