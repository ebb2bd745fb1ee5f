#pragma once

#include "fusiondepth/numeric.hpp"
#include "fusiondepth/verlinde.hpp"

#include <string>
#include <vector>

namespace fusiondepth::tower {

using verlinde::FusionRing;
using verlinde::IntMatrix;

/// Inclusion matrix between two floors; rows and cols are basis indices of
/// the supports at floors k and k+1.
struct InclusionMatrix {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  IntMatrix entries;

  bool is_square() const { return rows == cols; }
  /// Embeds into an m x m matrix over the full basis.
  IntMatrix embedded(std::size_t m) const;
};

/// Basis indices in the support of [W]^(x)k for k = 0..last.
std::vector<std::vector<std::size_t>> floor_supports(const FusionRing& ring, int last);

/// t(k)_{ij} = dim Hom(V_i (x) W, V_j) restricted to the supports at floors k and k+1.
InclusionMatrix inclusion_matrix(const FusionRing& ring, int k);

struct Floor {
  std::vector<std::size_t> support;
  /// Multiplicity of V_i in W^(x)k for each i in `support`.
  std::vector<BigInt> dims;
  InclusionMatrix to_next;
};

struct BratteliTower {
  std::string type;
  int level = 0;
  std::vector<Floor> floors;
  /// First floor whose support is all of D_l.
  int stationary_from = 0;
  /// The stationary inclusion matrix T.
  InclusionMatrix stationary;

  /// Multiplicity vector of floor k over the full basis.
  std::vector<BigInt> full_dims(std::size_t k, std::size_t m) const;
};

BratteliTower bratteli_tower(const FusionRing& ring, int floors);

struct PerronFrobenius {
  double eigenvalue = 0.0;
  /// Strictly positive, entry at V_0 equal to 1.
  std::vector<double> vector;
  int iterations = 0;
};

/// Power iteration from the all-ones vector. Throws NotIrreducible when T is
/// not square, has negative entries, or its graph is not strongly connected.
PerronFrobenius perron_frobenius(const InclusionMatrix& t);

struct TraceData {
  double pf_eigenvalue = 0.0;
  std::vector<double> pf_vector;
  /// floor_weights[k][a] = v_i / beta^k for the a-th support element i of floor k.
  std::vector<std::vector<double>> floor_weights;
};

TraceData trace_weights(const BratteliTower& tower);

struct PowerIndex {
  int k = 0;
  int parity = 0;
};

/// Smallest floor whose support contains basis element i.
PowerIndex minimal_power_index(const FusionRing& ring, std::size_t i);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct TowerReport {
  int depth = 0;
  int max_floor = 0;
  std::vector<Check> checks;
  bool all_pass() const;
};

/// Symmetry, irreducibility, stationarity, basic-construction dominance,
/// commuting squares, trace normalization and fusion realization.
TowerReport verify_tower_properties(const FusionRing& ring, int max_floor);

/// Graphviz rendering: floors as ranks, edge labels are multiplicities.
std::string to_dot(const BratteliTower& tower, const FusionRing& ring);

}  // namespace fusiondepth::tower
