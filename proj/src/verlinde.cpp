#include "fusiondepth/verlinde.hpp"

#include "fusiondepth/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fusiondepth::verlinde {

LevelWeightBasis::LevelWeightBasis(int level, std::vector<Weight> weights)
    : level_(level), weights_(std::move(weights)) {
  std::sort(weights_.begin(), weights_.end());
  weights_.erase(std::unique(weights_.begin(), weights_.end()), weights_.end());
  for (std::size_t i = 0; i < weights_.size(); ++i) index_.emplace(weights_[i], i);
}

std::optional<std::size_t> LevelWeightBasis::find(const Weight& w) const {
  const auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t LevelWeightBasis::index_of(const Weight& w) const {
  const auto it = index_.find(w);
  if (it == index_.end()) {
    throw WeightNotInLevel("weight " + w.to_string() + " is not in D_" + std::to_string(level_));
  }
  return it->second;
}

LevelWeightBasis enumerate_level_weights(const RootSystem& rs, int level) {
  if (level < 0) throw NegativeLevel("level must be non-negative, got " + std::to_string(level));
  const std::size_t n = rs.rank();
  const auto& comarks = rs.comarks();
  std::vector<Weight> out;
  Weight current(n);
  auto recurse = [&](auto&& self, std::size_t i, long budget) -> void {
    if (i == n) {
      out.push_back(current);
      return;
    }
    for (int x = 0; static_cast<long>(x) * comarks[i] <= budget; ++x) {
      current[i] = x;
      self(self, i + 1, budget - static_cast<long>(x) * comarks[i]);
    }
    current[i] = 0;
  };
  recurse(recurse, 0, level);
  return LevelWeightBasis(level, std::move(out));
}

std::optional<AffineFold> affine_fold(const RootSystem& rs, int level, const Weight& nu) {
  if (nu.rank() != rs.rank()) throw DimensionMismatch("affine_fold: rank mismatch");
  const long alcove = level + rs.dual_coxeter();
  const std::size_t n = rs.rank();
  const Weight& theta = rs.highest_root();
  Weight mu = nu + rs.rho();
  int sign = 1;
  // Each step strictly decreases the distance to the alcove; this bound is
  // far beyond anything a legitimate input needs.
  for (int iter = 0; iter < 1'000'000; ++iter) {
    std::size_t negative = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (mu[i] == 0) return std::nullopt;
      if (mu[i] < 0 && negative == n) negative = i;
    }
    const long level_mu = rs.level_of(mu);
    if (level_mu == alcove) return std::nullopt;
    if (negative != n) {
      rs.reflect(mu, negative);
      sign = -sign;
    } else if (level_mu > alcove) {
      mu -= static_cast<int>(level_mu - alcove) * theta;
      sign = -sign;
    } else {
      return AffineFold{mu - rs.rho(), sign};
    }
  }
  throw NonConvergence("affine_fold did not terminate for " + nu.to_string());
}

rep::Decomposition level_product(rep::CharacterStore& store, int level, const Weight& lambda, const Weight& mu) {
  const RootSystem& rs = store.root_system();
  if (level < 0) throw NegativeLevel("level must be non-negative");
  if (!lambda.is_dominant() || !mu.is_dominant()) {
    throw NonDominantInput("level_product needs dominant weights");
  }
  const bool swap = store.dimension(mu) > store.dimension(lambda);
  const Weight& big = swap ? mu : lambda;
  const Weight& small = swap ? lambda : mu;
  std::unordered_map<Weight, std::int64_t, lie::WeightHash> acc;
  for (const auto& [nu, m] : store.weights(small)) {
    if (auto f = affine_fold(rs, level, big + nu)) acc[f->weight] += f->sign * m;
  }
  rep::Decomposition out;
  for (const auto& [w, m] : acc) {
    if (m != 0) out.emplace(w, m);
  }
  return out;
}

rep::Decomposition fuse(rep::CharacterStore& store, int level, const Weight& lambda, const Weight& mu) {
  const RootSystem& rs = store.root_system();
  if (level < 0) throw NegativeLevel("level must be non-negative");
  for (const Weight* w : {&lambda, &mu}) {
    if (w->rank() != rs.rank()) throw DimensionMismatch("fuse: rank mismatch");
    if (!w->is_dominant() || rs.level_of(*w) > level) {
      throw WeightNotInLevel("weight " + w->to_string() + " is not in D_" + std::to_string(level));
    }
  }
  auto out = level_product(store, level, lambda, mu);
  for (const auto& [w, m] : out) {
    if (m < 0) throw InternalError("negative fusion coefficient at " + w.to_string());
  }
  return out;
}

IntMatrix FusionRing::w_matrix() const {
  const auto m = static_cast<Eigen::Index>(size());
  IntMatrix t = IntMatrix::Zero(m, m);
  for (std::size_t i = 0; i < w_class.size(); ++i) {
    if (w_class[i] != 0) t += w_class[i] * matrices[i];
  }
  return t;
}

std::vector<std::optional<AffineFold>> fundamental_classes(const RootSystem& rs, int level,
                                                           std::vector<std::string>* warnings) {
  std::vector<std::optional<AffineFold>> out;
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    const Weight omega = Weight::fundamental(rs.rank(), i);
    out.push_back(affine_fold(rs, level, omega));
    if (!warnings || rs.level_of(omega) <= level) continue;
    std::string image;
    if (!out.back()) {
      image = "0";
    } else {
      image = std::string(out.back()->sign < 0 ? "-" : "") + "[V(" + out.back()->weight.to_string() + ")]";
    }
    warnings->push_back("omega_" + std::to_string(i + 1) + " is not in D_" + std::to_string(level) +
                        "; its level class is " + image);
  }
  return out;
}

FusionRing fusion_matrices(rep::CharacterStore& store, int level) {
  const RootSystem& rs = store.root_system();
  if (level < 1) throw NegativeLevel("fusion_matrices needs level >= 1");
  FusionRing ring;
  ring.type = rs.type().name();
  ring.basis = enumerate_level_weights(rs, level);
  const std::size_t m = ring.size();
  const auto mi = static_cast<Eigen::Index>(m);

  ring.matrices.assign(m, IntMatrix::Zero(mi, mi));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (const auto& [w, c] : fuse(store, level, ring.basis[i], ring.basis[j])) {
        ring.matrices[i](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(ring.basis.index_of(w))) = c;
      }
    }
  }

  ring.dual.resize(m);
  for (std::size_t i = 0; i < m; ++i) ring.dual[i] = ring.basis.index_of(lie::dual_weight(rs, ring.basis[i]));

  ring.fundamental_classes = fundamental_classes(rs, level, &ring.warnings);
  ring.w_class.assign(m, 0);
  ring.w_class[0] += 1;
  for (const auto& cls : ring.fundamental_classes) {
    if (cls) ring.w_class[ring.basis.index_of(cls->weight)] += cls->sign;
  }
  if (std::any_of(ring.w_class.begin(), ring.w_class.end(), [](std::int64_t c) { return c < 0; })) {
    ring.warnings.push_back("[W] has a negative coefficient at level " + std::to_string(level));
  }

  if (ring.matrices[0] != IntMatrix::Identity(mi, mi)) throw InternalError("N_0 is not the identity");
  for (std::size_t i = 0; i < m; ++i) {
    if (ring.matrices[ring.dual[i]] != ring.matrices[i].transpose()) {
      throw InternalError("N_dual(i) != N_i^T for i = " + std::to_string(i));
    }
    for (std::size_t j = i + 1; j < m; ++j) {
      if (ring.matrices[i] * ring.matrices[j] != ring.matrices[j] * ring.matrices[i]) {
        throw InternalError("fusion matrices do not commute");
      }
    }
  }
  return ring;
}

std::vector<double> SMatrixOracle::quantum_dimensions() const {
  std::vector<double> out(static_cast<std::size_t>(s.rows()));
  for (Eigen::Index i = 0; i < s.rows(); ++i) out[static_cast<std::size_t>(i)] = (s(i, 0) / s(0, 0)).real();
  return out;
}

SMatrixOracle smatrix_verlinde_oracle(const RootSystem& rs, int level, std::size_t weyl_cap,
                                      double rounding_tolerance) {
  if (level < 0) throw NegativeLevel("level must be non-negative");
  const BigInt order = rs.weyl_group_order();
  if (order > weyl_cap) {
    throw WeylGroupTooLarge("Weyl group of " + rs.type().name() + " has " + order.str() + " elements (cap " +
                            std::to_string(weyl_cap) + ")");
  }
  const auto basis = enumerate_level_weights(rs, level);
  const auto m = static_cast<Eigen::Index>(basis.size());
  const double scale =
      2.0 * std::numbers::pi / (static_cast<double>(rs.form_denominator()) * (level + rs.dual_coxeter()));

  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const Weight shifted = basis[static_cast<std::size_t>(a)] + rs.rho();
    // lambda + rho is regular, so orbit elements correspond to Weyl group
    // elements and the tree parity is det(w).
    lie::for_each_orbit_element(rs, shifted, [&](const Weight& w, int sign) {
      for (Eigen::Index b = 0; b < m; ++b) {
        const double phase = -scale * static_cast<double>(rs.scaled_product(w, basis[static_cast<std::size_t>(b)] + rs.rho()));
        s(a, b) += static_cast<double>(sign) * std::polar(1.0, phase);
      }
    });
  }
  const double norm = std::sqrt(s.row(0).squaredNorm());
  s /= norm;
  s *= std::conj(s(0, 0)) / std::abs(s(0, 0));

  SMatrixOracle out;
  out.unitarity_error =
      (s * s.adjoint() - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff();
  out.n.assign(static_cast<std::size_t>(m), IntMatrix::Zero(m, m));
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      for (Eigen::Index k = 0; k < m; ++k) {
        std::complex<double> v = 0;
        for (Eigen::Index x = 0; x < m; ++x) v += s(i, x) * s(j, x) * std::conj(s(k, x)) / s(0, x);
        const double r = std::round(v.real());
        out.rounding_residual = std::max(out.rounding_residual, std::abs(v - r));
        out.n[static_cast<std::size_t>(i)](j, k) = static_cast<std::int64_t>(r);
      }
    }
  }
  out.s = std::move(s);
  if (out.rounding_residual > rounding_tolerance) {
    throw RoundingFailure("Verlinde formula residual " + std::to_string(out.rounding_residual) + " exceeds " +
                          std::to_string(rounding_tolerance));
  }
  return out;
}

}  // namespace fusiondepth::verlinde
