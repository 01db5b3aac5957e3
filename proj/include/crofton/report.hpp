#pragma once

#include <json.hpp>

#include "crofton/crofton.hpp"
#include "crofton/curve.hpp"

namespace crofton {

inline constexpr const char* kToolVersion = "1.0.0";

/// Report record without the wall time; non-finite numbers become null.
nlohmann::json to_json(const VerificationReport& r);

nlohmann::json to_json(const StrongSpacelikeReport& r);

/// Replaces non-finite doubles by null, recursively.
nlohmann::json sanitize(nlohmann::json j);

}  // namespace crofton
