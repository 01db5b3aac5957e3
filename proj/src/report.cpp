#include "crofton/report.hpp"

#include <cmath>

namespace crofton {

nlohmann::json sanitize(nlohmann::json j) {
  if (j.is_number_float()) {
    if (!std::isfinite(j.get<double>())) return nullptr;
  } else if (j.is_structured()) {
    for (auto& v : j) v = sanitize(std::move(v));
  }
  return j;
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["method"] = r.method;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["abs_residual"] = r.abs_residual;
  j["rel_residual"] = r.rel_residual;
  j["n_samples"] = r.n_samples;
  j["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr);
  j["std_error"] = r.std_error;
  j["degenerate"] = r.degenerate;
  j["passed"] = r.passed;
  j["values"] = r.values;
  j["notes"] = r.notes;
  return sanitize(std::move(j));
}

nlohmann::json to_json(const StrongSpacelikeReport& r) {
  return sanitize({{"verdict", r.verdict},
                   {"min_speed_margin", r.min_speed_margin},
                   {"min_osculating_margin", r.min_osculating_margin},
                   {"min_curvature_times_length", r.min_curvature},
                   {"worst_t", r.worst_t},
                   {"n_samples", r.n_samples},
                   {"tol", r.tol}});
}

}  // namespace crofton
