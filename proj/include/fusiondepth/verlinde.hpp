#pragma once

#include "fusiondepth/lie.hpp"
#include "fusiondepth/rep.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace fusiondepth::verlinde {

using lie::RootSystem;
using lie::Weight;

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// D_l: all dominant weights with (lambda, theta) <= l, in lexicographic
/// label order (so the zero weight has index 0).
class LevelWeightBasis {
 public:
  LevelWeightBasis() = default;
  LevelWeightBasis(int level, std::vector<Weight> weights);

  int level() const noexcept { return level_; }
  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<Weight>& weights() const noexcept { return weights_; }
  const Weight& operator[](std::size_t i) const { return weights_[i]; }

  bool contains(const Weight& w) const { return index_.count(w) != 0; }
  std::optional<std::size_t> find(const Weight& w) const;
  /// Throws WeightNotInLevel.
  std::size_t index_of(const Weight& w) const;

 private:
  int level_ = 0;
  std::vector<Weight> weights_;
  std::unordered_map<Weight, std::size_t, lie::WeightHash> index_;
};

LevelWeightBasis enumerate_level_weights(const RootSystem& rs, int level);

struct AffineFold {
  Weight weight;
  int sign = 1;
};

/// Folds nu + rho into the open fundamental alcove of level l using simple
/// reflections and the affine reflection in (x, theta) = l + h; returns the
/// folded weight minus rho with its sign, or nullopt when a wall is hit.
std::optional<AffineFold> affine_fold(const RootSystem& rs, int level, const Weight& nu);

/// The image of V(lambda) (x) V(mu) in the level-l ring for arbitrary dominant
/// lambda, mu. May carry negative coefficients when an input lies outside D_l.
rep::Decomposition level_product(rep::CharacterStore& store, int level, const Weight& lambda, const Weight& mu);

/// [V(lambda)] (x)_l [V(mu)] for lambda, mu in D_l.
rep::Decomposition fuse(rep::CharacterStore& store, int level, const Weight& lambda, const Weight& mu);

/// Level-l fusion ring with basis D_l. (N_i)_{jk} is the multiplicity of V_k
/// in V_i (x)_l V_j.
struct FusionRing {
  std::string type;
  LevelWeightBasis basis;
  std::vector<IntMatrix> matrices;
  /// dual[i] is the index of -w0(lambda_i).
  std::vector<std::size_t> dual;
  /// Coefficients of [W] = [V(0)] + sum_i [V(omega_i)] over the basis.
  std::vector<std::int64_t> w_class;
  /// Level-l classes of the fundamental weights, nullopt for wall hits.
  std::vector<std::optional<AffineFold>> fundamental_classes;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return basis.size(); }
  std::int64_t coefficient(std::size_t i, std::size_t j, std::size_t k) const { return matrices[i](j, k); }
  /// sum_i w_class[i] N_i, the fusion matrix of [W].
  IntMatrix w_matrix() const;
};

/// Level-l classes of W's summands and the warnings attached to levels where
/// a fundamental weight falls outside D_l.
std::vector<std::optional<AffineFold>> fundamental_classes(const RootSystem& rs, int level,
                                                           std::vector<std::string>* warnings = nullptr);

FusionRing fusion_matrices(rep::CharacterStore& store, int level);

inline constexpr std::size_t kDefaultWeylCap = 1'000'000;

struct SMatrixOracle {
  Eigen::MatrixXcd s;
  /// n[i](j, k) = sum_s S_is S_js conj(S_ks) / S_0s, rounded.
  std::vector<IntMatrix> n;
  double rounding_residual = 0.0;
  double unitarity_error = 0.0;

  /// S_i0 / S_00.
  std::vector<double> quantum_dimensions() const;
};

/// Kac-Peterson S-matrix and Verlinde-formula fusion coefficients. Throws
/// WeylGroupTooLarge above `weyl_cap` and RoundingFailure when any rounding
/// residual exceeds `rounding_tolerance`.
SMatrixOracle smatrix_verlinde_oracle(const RootSystem& rs, int level, std::size_t weyl_cap = kDefaultWeylCap,
                                      double rounding_tolerance = 1e-6);

}  // namespace fusiondepth::verlinde
