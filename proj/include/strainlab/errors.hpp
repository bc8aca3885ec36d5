#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace strainlab {

enum class ErrorCode {
  DimensionMismatch,
  NonFinite,
  NotSymmetric,
  NotSPD,
  NoConvergence,
  SingularInput,
  NegativeDeterminant,
  InvalidMetric,
  InvalidArgument,
  MidpointSingular,
  UnsupportedDimension,
  Overflow,
  ParseError,
};

/// Stable lowercase identifier, used in serialized records ("error:<code>").
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace strainlab
