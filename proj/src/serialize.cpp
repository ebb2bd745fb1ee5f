#include "fusiondepth/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace fusiondepth::io {

double rounded(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  const double out = std::stod(buf);
  return out == 0.0 ? 0.0 : out;
}

namespace {

Json labels(const lie::Weight& w) { return w.to_string(); }

Json int_matrix(const verlinde::IntMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json basis_json(const verlinde::LevelWeightBasis& basis) {
  Json out = Json::array();
  for (const auto& w : basis.weights()) out.push_back(labels(w));
  return out;
}

}  // namespace

Json to_json(const lie::RootSystem& rs) {
  const std::size_t n = rs.rank();
  Json cartan = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(rs.cartan(i, j));
    cartan.push_back(std::move(row));
  }
  Json norms = Json::array();
  for (const auto& r : rs.root_norms()) norms.push_back(to_string(r));
  Json roots = Json::array();
  for (const auto& r : rs.positive_roots()) roots.push_back(labels(r));
  return {
      {"type", rs.type().name()},
      {"rank", n},
      {"cartan", std::move(cartan)},
      {"norms", std::move(norms)},
      {"highest_root", labels(rs.highest_root())},
      {"marks", rs.marks()},
      {"comarks", rs.comarks()},
      {"dual_coxeter", rs.dual_coxeter()},
      {"rho", labels(rs.rho())},
      {"positive_roots", std::move(roots)},
      {"weyl_group_order", to_string(rs.weyl_group_order())},
  };
}

Json terms_json(const rep::Decomposition& d) {
  Json out = Json::object();
  for (const auto& [w, m] : d) {
    if (m != 0) out[w.to_string()] = m;
  }
  return out;
}

Json to_json(const verlinde::FusionRing& ring) {
  Json tensor = Json::array();
  const std::size_t m = ring.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        const auto c = ring.coefficient(i, j, k);
        if (c != 0) tensor.push_back({i, j, k, c});
      }
    }
  }
  return {
      {"type", ring.type},
      {"level", ring.basis.level()},
      {"basis", basis_json(ring.basis)},
      {"tensor", std::move(tensor)},
      {"dual", ring.dual},
      {"w_class", ring.w_class},
      {"warnings", ring.warnings},
  };
}

Json to_json(const verlinde::SMatrixOracle& s, const verlinde::LevelWeightBasis& basis, int digits) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < s.s.rows(); ++i) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (Eigen::Index j = 0; j < s.s.cols(); ++j) {
      rr.push_back(rounded(s.s(i, j).real(), digits));
      ri.push_back(rounded(s.s(i, j).imag(), digits));
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  Json qdims = Json::array();
  for (double q : s.quantum_dimensions()) qdims.push_back(rounded(q, digits));
  return {
      {"basis", basis_json(basis)},
      {"level", basis.level()},
      {"s_real", std::move(re)},
      {"s_imag", std::move(im)},
      {"quantum_dimensions", std::move(qdims)},
      {"rounding_residual_below_1e-6", s.rounding_residual < 1e-6},
      {"unitarity_error_below_1e-9", s.unitarity_error < 1e-9},
      {"float_digits", digits},
  };
}

Json to_json(const depth::DepthReport& report) {
  return {
      {"type", report.type},
      {"level", report.level},
      {"depth", report.depth},
      {"lower", report.bounds.lower},
      {"upper", report.bounds.upper},
      {"witness", labels(report.witness)},
      {"mode", report.mode.name()},
      {"covered", report.covered},
      {"within_bounds", report.within_bounds},
      {"warnings", report.warnings},
  };
}

Json to_json(const tower::InclusionMatrix& t, const verlinde::LevelWeightBasis& basis) {
  Json rows = Json::array();
  for (auto i : t.rows) rows.push_back(labels(basis[i]));
  Json cols = Json::array();
  for (auto j : t.cols) cols.push_back(labels(basis[j]));
  return {{"rows", std::move(rows)}, {"cols", std::move(cols)}, {"entries", int_matrix(t.entries)}};
}

Json to_json(const tower::BratteliTower& tower, const verlinde::FusionRing& ring) {
  Json floors = Json::array();
  for (std::size_t k = 0; k < tower.floors.size(); ++k) {
    const auto& f = tower.floors[k];
    Json support = Json::array();
    for (auto i : f.support) support.push_back(labels(ring.basis[i]));
    Json dims = Json::array();
    for (const auto& d : f.dims) dims.push_back(to_string(d));
    floors.push_back({
        {"floor", k},
        {"support", std::move(support)},
        {"dims", std::move(dims)},
        {"to_next", to_json(f.to_next, ring.basis)},
    });
  }
  return {
      {"type", tower.type},
      {"level", tower.level},
      {"stationary_from", tower.stationary_from},
      {"stationary", to_json(tower.stationary, ring.basis)},
      {"floors", std::move(floors)},
  };
}

Json to_json(const tower::TraceData& trace, const tower::BratteliTower& tower, const verlinde::FusionRing& ring,
             int digits) {
  Json v = Json::object();
  for (std::size_t i = 0; i < trace.pf_vector.size(); ++i) {
    v[ring.basis[i].to_string()] = rounded(trace.pf_vector[i], digits);
  }
  Json floors = Json::array();
  for (std::size_t k = 0; k < trace.floor_weights.size(); ++k) {
    Json w = Json::object();
    const auto& support = tower.floors[k].support;
    for (std::size_t a = 0; a < support.size(); ++a) {
      w[ring.basis[support[a]].to_string()] = rounded(trace.floor_weights[k][a], digits);
    }
    floors.push_back(std::move(w));
  }
  return {
      {"pf_eigenvalue", rounded(trace.pf_eigenvalue, digits)},
      {"pf_vector", std::move(v)},
      {"floor_weights", std::move(floors)},
      {"float_digits", digits},
  };
}

Json to_json(const tower::TowerReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  return {{"depth", report.depth}, {"max_floor", report.max_floor}, {"pass", report.all_pass()},
          {"checks", std::move(checks)}};
}

}  // namespace fusiondepth::io
