#include "crofton/errors.hpp"

namespace crofton {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotSpacelike: return "NotSpacelike";
    case ErrorKind::InflectionPoint: return "InflectionPoint";
    case ErrorKind::NotStrongSpacelike: return "NotStrongSpacelike";
    case ErrorKind::NonIntegerWinding: return "NonIntegerWinding";
    case ErrorKind::NotPositivelyOriented: return "NotPositivelyOriented";
    case ErrorKind::NotOnDeSitter: return "NotOnDeSitter";
    case ErrorKind::NotInH2: return "NotInH2";
    case ErrorKind::NegativeRadius: return "NegativeRadius";
    case ErrorKind::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorKind::WrongIndex: return "WrongIndex";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::DegenerateDomain: return "DegenerateDomain";
    case ErrorKind::SpecError: return "SpecError";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     std::optional<double> where) {
  std::string out = std::string(to_string(kind)) + ": " + message;
  if (where) out += " (at parameter " + std::to_string(*where) + ")";
  return out;
}

}  // namespace

GeometryError::GeometryError(ErrorKind kind, const std::string& message,
                             std::optional<double> where)
    : std::runtime_error(decorate(kind, message, where)),
      kind_(kind),
      where_(where) {}

}  // namespace crofton
