#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cfma {

enum class ErrorCode {
  InvalidArgument,
  NonFiniteIntegrand,
  MethodUnsupported,
  DegenerateCoefficients,
  SingularGamma,
  ZeroMean,
  NotIIDGaussian,
  ZeroCoefficient,
};

std::string_view to_string(ErrorCode code) noexcept;

// Numerical/domain failure. parameter() names the offending input (e.g.
// "gamma") so front ends can report it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string parameter, const std::string& what)
      : std::runtime_error(what), code_(code), parameter_(std::move(parameter)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  ErrorCode code_;
  std::string parameter_;
};

}  // namespace cfma
