#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace crofton {

enum class ErrorKind {
  ZeroVector,
  NotSpacelike,
  InflectionPoint,
  NotStrongSpacelike,
  NonIntegerWinding,
  NotPositivelyOriented,
  NotOnDeSitter,
  NotInH2,
  NegativeRadius,
  RadiusTooSmall,
  WrongIndex,
  BadParameter,
  DegenerateDomain,
  SpecError,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `kind()` is what callers branch on;
/// `where()` carries the offending curve parameter when there is one.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& message,
                std::optional<double> where = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<double> where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::optional<double> where_;
};

}  // namespace crofton
