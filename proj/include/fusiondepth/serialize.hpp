#pragma once

#include "fusiondepth/depth.hpp"
#include "fusiondepth/lie.hpp"
#include "fusiondepth/rep.hpp"
#include "fusiondepth/tower.hpp"
#include "fusiondepth/verlinde.hpp"

#include <json.hpp>

namespace fusiondepth::io {

using Json = nlohmann::json;

inline constexpr int kDefaultFloatDigits = 12;

/// Rounds to `digits` significant digits so that dumps do not depend on the
/// last bits of a floating-point computation.
double rounded(double value, int digits = kDefaultFloatDigits);

Json to_json(const lie::RootSystem& rs);
/// {"labels": multiplicity, ...} with weights written as comma-separated labels.
Json terms_json(const rep::Decomposition& d);
Json to_json(const verlinde::FusionRing& ring);
Json to_json(const verlinde::SMatrixOracle& s, const verlinde::LevelWeightBasis& basis, int digits = kDefaultFloatDigits);
Json to_json(const depth::DepthReport& report);
Json to_json(const tower::InclusionMatrix& t, const verlinde::LevelWeightBasis& basis);
Json to_json(const tower::BratteliTower& tower, const verlinde::FusionRing& ring);
Json to_json(const tower::TraceData& trace, const tower::BratteliTower& tower, const verlinde::FusionRing& ring,
             int digits = kDefaultFloatDigits);
Json to_json(const tower::TowerReport& report);

}  // namespace fusiondepth::io
