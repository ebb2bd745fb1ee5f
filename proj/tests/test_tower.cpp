#include <doctest.h>

#include "fusiondepth/errors.hpp"
#include "fusiondepth/tower.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numeric>

using namespace fusiondepth;
using lie::RootSystem;
using lie::SimpleType;
using lie::Weight;
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

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

// Multiplicities of [a] in ([0] + [1])^k at su(2) level l, from the closed-form fusion rule.
std::vector<std::vector<long>> a1_floor_dims(int l, int floors) {
  std::vector<std::vector<long>> out{std::vector<long>(static_cast<std::size_t>(l) + 1, 0)};
  out[0][0] = 1;
  for (int k = 1; k < floors; ++k) {
    std::vector<long> next(static_cast<std::size_t>(l) + 1, 0);
    for (int i = 0; i <= l; ++i) {
      for (int j = 0; j <= l; ++j) {
        const long step = (i == j ? 1 : 0) + oracle::a1_fusion(l, i, 1, j);
        next[static_cast<std::size_t>(j)] += out.back()[static_cast<std::size_t>(i)] * step;
      }
    }
    out.push_back(next);
  }
  return out;
}

}  // namespace

TEST_CASE("stationary inclusion matrices for su(2)") {
  const auto a1 = make("A1");
  rep::CharacterStore store(a1);
  const auto r2 = verlinde::fusion_matrices(store, 2);
  for (int k = 2; k <= 5; ++k) {
    const auto t = tower::inclusion_matrix(r2, k);
    CHECK(t.is_square());
    CHECK(t.entries == matrix({{1, 1, 0}, {1, 1, 1}, {0, 1, 1}}));
  }
  const auto t0 = tower::inclusion_matrix(r2, 0);
  CHECK(t0.rows == std::vector<std::size_t>{0});
  CHECK(t0.cols == std::vector<std::size_t>{0, 1});
  CHECK(t0.entries == matrix({{1, 1}}));
  CHECK(t0.embedded(3) == matrix({{1, 1, 0}, {0, 0, 0}, {0, 0, 0}}));

  const auto r1 = verlinde::fusion_matrices(store, 1);
  CHECK(tower::bratteli_tower(r1, 4).stationary.entries == matrix({{1, 1}, {1, 1}}));
}

TEST_CASE("floor dimensions") {
  const auto a1 = make("A1");
  rep::CharacterStore store(a1);
  const auto ring = verlinde::fusion_matrices(store, 2);
  const auto tw = tower::bratteli_tower(ring, 4);
  REQUIRE(tw.floors.size() == 4);
  CHECK(tw.floors[0].support == std::vector<std::size_t>{0});
  CHECK(tw.floors[0].dims == std::vector<BigInt>{1});
  CHECK(tw.full_dims(1, 3) == std::vector<BigInt>{1, 1, 0});
  CHECK(tw.full_dims(2, 3) == std::vector<BigInt>{2, 2, 1});
  CHECK(tw.full_dims(3, 3) == std::vector<BigInt>{4, 5, 3});

  for (int l = 1; l <= 6; ++l) {
    CAPTURE(l);
    const auto r = verlinde::fusion_matrices(store, l);
    const auto t = tower::bratteli_tower(r, 12);
    CHECK(t.stationary_from == l);
    const auto expected = a1_floor_dims(l, 12);
    const auto m = static_cast<std::size_t>(l) + 1;
    for (std::size_t k = 0; k < 12; ++k) {
      const auto dims = t.full_dims(k, m);
      for (std::size_t i = 0; i < m; ++i) CHECK(dims[i] == expected[k][i]);
      CHECK(t.floors[k].support.size() == std::min<std::size_t>(k + 1, m));
    }
  }
  CHECK_THROWS(tower::bratteli_tower(ring, 0));
}

TEST_CASE("floor dimensions weighted by quantum dimensions grow like beta") {
  for (const char* name : {"A2", "B2", "G2", "C3"}) {
    CAPTURE(name);
    const auto rs = make(name);
    rep::CharacterStore store(rs);
    const int l = 2;
    const auto ring = verlinde::fusion_matrices(store, l);
    const auto q = verlinde::smatrix_verlinde_oracle(rs, l).quantum_dimensions();
    const auto tw = tower::bratteli_tower(ring, 9);
    const double beta = tower::perron_frobenius(tw.stationary).eigenvalue;
    for (std::size_t k = 0; k < tw.floors.size(); ++k) {
      double total = 0.0;
      const auto dims = tw.full_dims(k, ring.size());
      for (std::size_t i = 0; i < ring.size(); ++i) total += dims[i].convert_to<double>() * q[i];
      CHECK(total == doctest::Approx(std::pow(beta, static_cast<double>(k))).epsilon(1e-9));
    }
  }
}

TEST_CASE("Perron-Frobenius data") {
  tower::InclusionMatrix ones{iota(2), iota(2), matrix({{1, 1}, {1, 1}})};
  const auto pf = tower::perron_frobenius(ones);
  CHECK(pf.eigenvalue == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(pf.vector[0] == 1.0);
  CHECK(pf.vector[1] == doctest::Approx(1.0).epsilon(1e-12));

  const auto a1 = make("A1");
  rep::CharacterStore store(a1);
  for (int l = 1; l <= 6; ++l) {
    CAPTURE(l);
    const auto tw = tower::bratteli_tower(verlinde::fusion_matrices(store, l), l + 2);
    const auto p = tower::perron_frobenius(tw.stationary);
    CHECK(std::abs(p.eigenvalue - oracle::a1_pf_eigenvalue(l)) < 1e-9);
    for (double x : p.vector) CHECK(x > 0);
    // Eigenvector of T for beta.
    const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(p.vector.data(), static_cast<Eigen::Index>(p.vector.size()));
    CHECK((tw.stationary.entries.cast<double>() * v - p.eigenvalue * v).norm() < 1e-9);
  }
  const auto a1_3 = tower::bratteli_tower(verlinde::fusion_matrices(store, 3), 5);
  CHECK(tower::perron_frobenius(a1_3.stationary).eigenvalue == doctest::Approx(2.6180340).epsilon(1e-7));

  tower::InclusionMatrix split{iota(2), iota(2), matrix({{1, 0}, {0, 1}})};
  CHECK_THROWS_AS(tower::perron_frobenius(split), NotIrreducible);
  tower::InclusionMatrix one_way{iota(2), iota(2), matrix({{1, 1}, {0, 1}})};
  CHECK_THROWS_AS(tower::perron_frobenius(one_way), NotIrreducible);
  tower::InclusionMatrix negative{iota(2), iota(2), matrix({{1, -1}, {1, 1}})};
  CHECK_THROWS_AS(tower::perron_frobenius(negative), NotIrreducible);
  tower::InclusionMatrix rectangular{iota(1), iota(2), matrix({{1, 1}})};
  CHECK_THROWS_AS(tower::perron_frobenius(rectangular), NotIrreducible);
}

TEST_CASE("beta is the quantum dimension of W") {
  for (const char* name : {"A1", "A2", "B2", "G2", "A3", "C3"}) {
    const auto rs = make(name);
    rep::CharacterStore store(rs);
    for (int l = 1; l <= 3; ++l) {
      CAPTURE(name);
      CAPTURE(l);
      const auto ring = verlinde::fusion_matrices(store, l);
      const auto q = verlinde::smatrix_verlinde_oracle(rs, l).quantum_dimensions();
      double qdim_w = 0.0;
      for (std::size_t i = 0; i < ring.size(); ++i) qdim_w += static_cast<double>(ring.w_class[i]) * q[i];
      const auto tw = tower::bratteli_tower(ring, 12);
      CHECK(std::abs(tower::perron_frobenius(tw.stationary).eigenvalue - qdim_w) < 1e-6);
    }
  }
}

TEST_CASE("Markov trace") {
  const auto a1 = make("A1");
  rep::CharacterStore store(a1);
  const auto r1 = verlinde::fusion_matrices(store, 1);
  const auto t1 = tower::trace_weights(tower::bratteli_tower(r1, 3));
  REQUIRE(t1.floor_weights.size() == 3);
  CHECK(t1.floor_weights[0] == std::vector<double>{1.0});
  REQUIRE(t1.floor_weights[1].size() == 2);
  CHECK(t1.floor_weights[1][0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t1.floor_weights[1][1] == doctest::Approx(0.5).epsilon(1e-12));

  for (const char* name : {"A1", "A2", "B2", "G2"}) {
    const auto rs = make(name);
    rep::CharacterStore s(rs);
    for (int l = 1; l <= 3; ++l) {
      CAPTURE(name);
      CAPTURE(l);
      const auto tw = tower::bratteli_tower(verlinde::fusion_matrices(s, l), 15);
      const auto tr = tower::trace_weights(tw);
      for (std::size_t k = 0; k < tw.floors.size(); ++k) {
        double identity = 0.0;
        for (std::size_t a = 0; a < tw.floors[k].support.size(); ++a) {
          identity += tw.floors[k].dims[a].convert_to<double>() * tr.floor_weights[k][a];
        }
        CHECK(std::abs(identity - 1.0) < 1e-9);
        for (std::size_t a = 0; a < tw.floors[k].support.size(); ++a) {
          const std::size_t i = tw.floors[k].support[a];
          CHECK(tr.floor_weights[k][a] ==
                doctest::Approx(tr.pf_vector[i] / std::pow(tr.pf_eigenvalue, static_cast<double>(k))).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("minimal power index") {
  const auto a1 = make("A1");
  rep::CharacterStore s1(a1);
  const auto r3 = verlinde::fusion_matrices(s1, 3);
  CHECK(tower::minimal_power_index(r3, 0).k == 0);
  CHECK(tower::minimal_power_index(r3, 0).parity == 0);
  CHECK(tower::minimal_power_index(r3, 2).k == 2);
  CHECK(tower::minimal_power_index(r3, 2).parity == 0);
  CHECK(tower::minimal_power_index(r3, 3).parity == 1);

  for (const char* name : {"A2", "B2", "G2", "B3"}) {
    CAPTURE(name);
    const auto rs = make(name);
    rep::CharacterStore store(rs);
    const auto ring = verlinde::fusion_matrices(store, 2);
    for (std::size_t f = 0; f < rs.rank(); ++f) {
      const auto p = tower::minimal_power_index(ring, ring.basis.index_of(Weight::fundamental(rs.rank(), f)));
      CHECK(p.k == 1);
      CHECK(p.parity == 1);
    }
  }
}

TEST_CASE("tower property report") {
  const auto a1 = make("A1");
  rep::CharacterStore s1(a1);
  const auto report = tower::verify_tower_properties(verlinde::fusion_matrices(s1, 2), 6);
  CHECK(report.depth == 2);
  for (const auto& c : report.checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.pass);
  }
  CHECK(report.all_pass());
  std::vector<std::string> names;
  for (const auto& c : report.checks) names.push_back(c.name);
  for (const char* expected : {"stationary_symmetric", "irreducible", "stationarity", "basic_construction",
                               "commuting_square", "markov_trace", "fusion_realization", "duality", "commutativity"}) {
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  }

  const auto g2 = make("G2");
  rep::CharacterStore sg(g2);
  const auto g2_report = tower::verify_tower_properties(verlinde::fusion_matrices(sg, 2), 6);
  for (const auto& c : g2_report.checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.pass);
  }

  // A short request is raised to d + 2 floors.
  CHECK(tower::verify_tower_properties(verlinde::fusion_matrices(s1, 4), 1).max_floor >= 6);
}

TEST_CASE("DOT rendering") {
  const auto a1 = make("A1");
  rep::CharacterStore store(a1);
  const auto ring = verlinde::fusion_matrices(store, 1);
  const auto dot = tower::to_dot(tower::bratteli_tower(ring, 3), ring);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("rank=same") != std::string::npos);
  CHECK(dot.find("f0_0") != std::string::npos);
  CHECK(dot.find("f2_1") != std::string::npos);
  CHECK(dot.find("f0_0 -> f1_1") != std::string::npos);
  CHECK(dot.back() == '\n');
}
