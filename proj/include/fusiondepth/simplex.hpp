#pragma once

#include "fusiondepth/numeric.hpp"

#include <vector>

namespace fusiondepth::lp {

/// maximize c.x subject to A x <= b, x >= 0, with b >= 0 so that the origin
/// is feasible.
struct Problem {
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> constraints;
  std::vector<Rational> bounds;
};

struct Solution {
  Rational value;
  std::vector<Rational> x;
  int pivots = 0;
};

/// Exact tableau simplex with Bland's rule. Throws Unbounded when the
/// objective is unbounded above and DimensionMismatch on malformed input.
Solution maximize(const Problem& problem);

}  // namespace fusiondepth::lp
