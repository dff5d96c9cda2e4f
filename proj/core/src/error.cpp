#include "cfma/error.hpp"

namespace cfma {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorCode::MethodUnsupported: return "MethodUnsupported";
    case ErrorCode::DegenerateCoefficients: return "DegenerateCoefficients";
    case ErrorCode::SingularGamma: return "SingularGamma";
    case ErrorCode::ZeroMean: return "ZeroMean";
    case ErrorCode::NotIIDGaussian: return "NotIIDGaussian";
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
  }
  return "Unknown";
}

}  // namespace cfma
