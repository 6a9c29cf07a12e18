// SPDX-License-Identifier: MIT
#pragma once

#include <json.hpp>

#include "finsler/automorphisms.hpp"
#include "finsler/curvature.hpp"
#include "finsler/errors.hpp"
#include "finsler/metrics.hpp"
#include "finsler/norms.hpp"
#include "finsler/verify.hpp"

namespace finsler {

using json = nlohmann::ordered_json;

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
json matrix_to_json(const CMat& m);
CMat matrix_from_json(const json& j);
json real_matrix_to_json(const RMat& m);

json profile_to_json(const PhiProfile& phi);
/// A built-in name, or {"name", "phi", "d1", "d2"} with coefficient lists.
PhiProfile profile_from_json(const json& j);

json spec_to_json(const DomainSpec& spec);
DomainSpec spec_from_json(const json& j);

json to_json(const MetricValue& v);
json to_json(const CurvatureReport& r);
json to_json(const CurvatureBounds& b);
json to_json(const BisectionalBounds& b);
json to_json(const PhiValidation& v);
json to_json(const Automorphism& a);
json to_json(const Check& c);
/// Report without wall time, so equal inputs give equal bytes.
json to_json(const VerificationReport& r);

json error_envelope(ErrorCode code, const std::string& message);

/// Deterministic text form used by the CLI.
std::string dump(const json& j);

} // namespace finsler
