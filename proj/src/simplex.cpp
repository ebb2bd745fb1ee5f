#include "fusiondepth/simplex.hpp"

#include "fusiondepth/errors.hpp"

namespace fusiondepth::lp {

Solution maximize(const Problem& problem) {
  const std::size_t n = problem.objective.size();
  const std::size_t rows = problem.constraints.size();
  if (problem.bounds.size() != rows) throw DimensionMismatch("lp: bounds/constraints size mismatch");
  for (const auto& row : problem.constraints) {
    if (row.size() != n) throw DimensionMismatch("lp: constraint row has wrong length");
  }
  for (const auto& b : problem.bounds) {
    if (b < 0) throw DimensionMismatch("lp: negative right-hand side, origin infeasible");
  }

  // Tableau columns: n structural, rows slack, then the right-hand side.
  const std::size_t width = n + rows + 1;
  std::vector<std::vector<Rational>> tab(rows, std::vector<Rational>(width));
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < n; ++j) tab[r][j] = problem.constraints[r][j];
    tab[r][n + r] = 1;
    tab[r][width - 1] = problem.bounds[r];
    basis[r] = n + r;
  }
  // Reduced costs: z_j - c_j, negative entries can still improve.
  std::vector<Rational> cost(width);
  for (std::size_t j = 0; j < n; ++j) cost[j] = -problem.objective[j];

  Solution sol;
  while (true) {
    // Bland: smallest improving column, then smallest basic index on ties.
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = rows;
    Rational best_ratio;
    for (std::size_t r = 0; r < rows; ++r) {
      if (tab[r][enter] <= 0) continue;
      const Rational ratio = tab[r][width - 1] / tab[r][enter];
      if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == rows) throw Unbounded("linear program is unbounded");

    const Rational pivot = tab[leave][enter];
    for (auto& v : tab[leave]) v /= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || tab[r][enter] == 0) continue;
      const Rational f = tab[r][enter];
      for (std::size_t j = 0; j < width; ++j) tab[r][j] -= f * tab[leave][j];
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j < width; ++j) cost[j] -= f * tab[leave][j];
    }
    basis[leave] = enter;
    ++sol.pivots;
  }

  sol.value = cost[width - 1];
  sol.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] < n) sol.x[basis[r]] = tab[r][width - 1];
  }
  return sol;
}

}  // namespace fusiondepth::lp
