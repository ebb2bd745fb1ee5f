#include <doctest.h>

#include "fusiondepth/errors.hpp"
#include "fusiondepth/verlinde.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>

using namespace fusiondepth;
using lie::RootSystem;
using lie::SimpleType;
using lie::Weight;
using rep::Decomposition;
using verlinde::IntMatrix;

namespace {

RootSystem make(const std::string& name) { return RootSystem(SimpleType::parse(name)); }

IntMatrix matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (auto v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

double spectral_radius(const IntMatrix& m) {
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(m.cast<double>());
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("level weights") {
  const auto a1 = make("A1");
  CHECK(verlinde::enumerate_level_weights(a1, 0).weights() == std::vector<Weight>{Weight{0}});
  CHECK(verlinde::enumerate_level_weights(a1, 3).weights() ==
        std::vector<Weight>{Weight{0}, Weight{1}, Weight{2}, Weight{3}});
  const auto g2 = make("G2");
  CHECK(verlinde::enumerate_level_weights(g2, 2).weights() ==
        std::vector<Weight>{Weight{0, 0}, Weight{0, 1}, Weight{1, 0}, Weight{2, 0}});
  CHECK_THROWS_AS(verlinde::enumerate_level_weights(a1, -1), NegativeLevel);

  const auto basis = verlinde::enumerate_level_weights(g2, 3);
  CHECK(basis.contains(Weight{1, 1}));
  CHECK_FALSE(basis.contains(Weight{0, 2}));
  CHECK(basis.index_of(basis[2]) == 2);
  CHECK_THROWS_AS(basis.index_of(Weight{0, 2}), WeightNotInLevel);

  for (const auto& t : oracle::types_up_to_rank(4)) {
    CAPTURE(t.name());
    const auto rs = make(t.name());
    for (int l = 0; l <= 4; ++l) {
      const auto b = verlinde::enumerate_level_weights(rs, l);
      CHECK(b.size() == oracle::level_weight_count(oracle::comarks(t.family, t.rank), l));
      CHECK(b[0].is_zero());
      CHECK(std::is_sorted(b.weights().begin(), b.weights().end()));
      for (const auto& w : b.weights()) CHECK(lie::inner_product(rs, w, rs.highest_root()) <= l);
    }
  }
}

TEST_CASE("affine folding") {
  const auto a1 = make("A1");
  auto f = verlinde::affine_fold(a1, 3, Weight{2});
  REQUIRE(f);
  CHECK(f->weight == Weight{2});
  CHECK(f->sign == 1);
  CHECK_FALSE(verlinde::affine_fold(a1, 1, Weight{2}));
  f = verlinde::affine_fold(a1, 1, Weight{4});
  REQUIRE(f);
  CHECK(f->weight == Weight{0});
  CHECK(f->sign == -1);
  // Classical wall: nu + rho has a zero label.
  CHECK_FALSE(verlinde::affine_fold(a1, 2, Weight{-1}));
  // A negative weight folds through the finite Weyl group.
  f = verlinde::affine_fold(a1, 2, Weight{-3});
  REQUIRE(f);
  CHECK(f->weight == Weight{1});
  CHECK(f->sign == -1);
}

TEST_CASE("fusion examples") {
  const auto a1 = make("A1");
  rep::CharacterStore s1(a1);
  CHECK(verlinde::fuse(s1, 3, Weight{0}, Weight{2}) == Decomposition{{Weight{2}, 1}});
  CHECK(verlinde::fuse(s1, 3, Weight{1}, Weight{1}) == Decomposition{{Weight{0}, 1}, {Weight{2}, 1}});
  CHECK(verlinde::fuse(s1, 2, Weight{2}, Weight{2}) == Decomposition{{Weight{0}, 1}});
  CHECK_THROWS_AS(verlinde::fuse(s1, 2, Weight{3}, Weight{0}), WeightNotInLevel);

  const auto a2 = make("A2");
  rep::CharacterStore s2(a2);
  CHECK(verlinde::fuse(s2, 1, Weight{1, 0}, Weight{1, 0}) == Decomposition{{Weight{0, 1}, 1}});

  // Outside D_l the image may be virtual.
  const auto virtual_image = verlinde::level_product(s1, 1, Weight{0}, Weight{4});
  CHECK(virtual_image == Decomposition{{Weight{0}, -1}});
}

TEST_CASE("fusion matrices: examples and ring axioms") {
  const auto a1 = make("A1");
  rep::CharacterStore s1(a1);
  const auto r1 = verlinde::fusion_matrices(s1, 1);
  CHECK(r1.matrices[1] == matrix({{0, 1}, {1, 0}}));
  CHECK(r1.matrices[0] == IntMatrix::Identity(2, 2));
  const auto r2 = verlinde::fusion_matrices(s1, 2);
  CHECK(r2.matrices[1] == matrix({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}));

  for (const char* name : {"A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "F4"}) {
    const auto rs = make(name);
    rep::CharacterStore store(rs);
    for (int l = 1; l <= 3; ++l) {
      if (rs.rank() >= 3 && l == 3) continue;
      CAPTURE(name);
      CAPTURE(l);
      const auto ring = verlinde::fusion_matrices(store, l);
      const std::size_t m = ring.size();
      const auto mi = static_cast<Eigen::Index>(m);
      CHECK(ring.matrices[0] == IntMatrix::Identity(mi, mi));
      for (std::size_t i = 0; i < m; ++i) {
        CHECK(ring.matrices[ring.dual[i]] == ring.matrices[i].transpose());
        CHECK((ring.matrices[i].array() >= 0).all());
        for (std::size_t j = 0; j < m; ++j) {
          CHECK(ring.matrices[i] * ring.matrices[j] == ring.matrices[j] * ring.matrices[i]);
          IntMatrix combo = IntMatrix::Zero(mi, mi);
          for (std::size_t k = 0; k < m; ++k) combo += ring.coefficient(i, j, k) * ring.matrices[k];
          CHECK(ring.matrices[i] * ring.matrices[j] == combo);

          const auto& a = ring.basis[i];
          const auto& b = ring.basis[j];
          if (ring.basis.contains(a + b)) {
            const auto classical = rep::tensor_decompose(store, a, b);
            CHECK(verlinde::fuse(store, l, a, b) == classical);
            for (const auto& [nu, mult] : classical) CHECK(ring.basis.contains(nu));
          }
        }
      }
    }
  }
}

TEST_CASE("su(2) fusion closed form") {
  const auto a1 = make("A1");
  rep::CharacterStore store(a1);
  for (int l = 1; l <= 6; ++l) {
    const auto ring = verlinde::fusion_matrices(store, l);
    for (int a = 0; a <= l; ++a)
      for (int b = 0; b <= l; ++b)
        for (int c = 0; c <= l; ++c) {
          CHECK(ring.coefficient(static_cast<std::size_t>(a), static_cast<std::size_t>(b),
                                 static_cast<std::size_t>(c)) == oracle::a1_fusion(l, a, b, c));
        }
  }
}

TEST_CASE("fundamentals outside D_l produce warnings") {
  const auto g2 = make("G2");
  rep::CharacterStore store(g2);
  const auto ring = verlinde::fusion_matrices(store, 1);
  CHECK_FALSE(ring.warnings.empty());
  REQUIRE(ring.fundamental_classes.size() == 2);
  CHECK(ring.fundamental_classes[0]);
  const auto clean = verlinde::fusion_matrices(store, 2);
  CHECK(clean.warnings.empty());
  CHECK(clean.w_class == std::vector<std::int64_t>{1, 1, 1, 0});
}

TEST_CASE("S-matrix oracle") {
  const auto a1 = make("A1");
  for (int l = 1; l <= 6; ++l) {
    CAPTURE(l);
    const auto s = verlinde::smatrix_verlinde_oracle(a1, l);
    for (int a = 0; a <= l; ++a) {
      for (int b = 0; b <= l; ++b) {
        CHECK(s.s(a, b).real() == doctest::Approx(oracle::a1_s_matrix(l, a, b)).epsilon(1e-12));
        CHECK(std::abs(s.s(a, b).imag()) < 1e-12);
      }
    }
    CHECK(s.unitarity_error < 1e-9);
    CHECK(s.rounding_residual < 1e-6);
  }

  for (const char* name : {"G2", "A2", "B2", "C3"}) {
    CAPTURE(name);
    const auto rs = make(name);
    rep::CharacterStore store(rs);
    const int l = 2;
    const auto ring = verlinde::fusion_matrices(store, l);
    const auto s = verlinde::smatrix_verlinde_oracle(rs, l);
    CHECK(s.n == ring.matrices);
    CHECK(s.unitarity_error < 1e-9);
    const auto q = s.quantum_dimensions();
    for (std::size_t i = 0; i < ring.size(); ++i) {
      CHECK(q[i] > 0);
      CHECK(q[i] == doctest::Approx(spectral_radius(ring.matrices[i])).epsilon(1e-6));
    }
  }

  CHECK_THROWS_AS(verlinde::smatrix_verlinde_oracle(make("E8"), 1), WeylGroupTooLarge);
  CHECK_THROWS_AS(verlinde::smatrix_verlinde_oracle(make("A3"), 1, 10), WeylGroupTooLarge);
}
