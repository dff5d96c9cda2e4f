#include "cfma/cfma_rates.hpp"

#include <algorithm>
#include <cmath>

#include "cfma/error.hpp"

namespace cfma {

CoefficientPair::CoefficientPair(IntVec2 a, IntVec2 b) : a_(a), b_(b) {
  if (determinant() == 0) {
    throw Error(ErrorCode::DegenerateCoefficients, "coeffs",
                "coefficient vectors " + label() + " are linearly dependent");
  }
}

std::string CoefficientPair::label() const {
  return "a=(" + std::to_string(a_[0]) + "," + std::to_string(a_[1]) + ");b=(" +
         std::to_string(b_[0]) + "," + std::to_string(b_[1]) + ")";
}

Scaling Scaling::from_betas(double beta1, double beta2) {
  if (beta1 == 0.0 || !std::isfinite(beta1)) {
    throw Error(ErrorCode::SingularGamma, "beta1", "beta1 must be finite and nonzero");
  }
  if (beta2 == 0.0 || !std::isfinite(beta2)) {
    throw Error(ErrorCode::SingularGamma, "beta2", "beta2 must be finite and nonzero");
  }
  return from_gamma(beta1 / beta2);
}

Scaling Scaling::from_gamma(double gamma) {
  if (gamma == 0.0 || !std::isfinite(gamma)) {
    throw Error(ErrorCode::SingularGamma, "gamma", "gamma must be finite and nonzero");
  }
  return Scaling(gamma);
}

double m_integrand(const IntVec2& a, const Scaling& scaling, double rho1, double rho2) noexcept {
  const double t1 = a[0] * scaling.beta1();
  const double t2 = a[1] * scaling.beta2();
  const double cross = t1 * rho2 - t2 * rho1;
  return (t1 * t1 + t2 * t2) + cross * cross;
}

namespace {

// log2 |beta_l|, the per-user offset 1/2 log2(beta_l^2).
std::array<double, 2> beta_offsets(const Scaling& scaling) {
  return {std::log2(std::abs(scaling.beta1())), std::log2(std::abs(scaling.beta2()))};
}

void require_nonzero(const IntVec2& a) {
  if (a[0] == 0 && a[1] == 0) {
    throw Error(ErrorCode::DegenerateCoefficients, "a", "coefficient vector a is zero");
  }
}

}  // namespace

StageRates rate_first(const ChannelModel& model, const IntVec2& a, const Scaling& scaling,
                      const ExpectationMethod& method) {
  require_nonzero(a);
  const ExpectationEstimate base = expect(
      model,
      [&](double r1, double r2) {
        return 0.5 * std::log2((1.0 + r1 * r1 + r2 * r2) / m_integrand(a, scaling, r1, r2));
      },
      method);
  const auto offset = beta_offsets(scaling);
  return {{base.value + offset[0], base.value + offset[1]}, base.std_error};
}

StageRates rate_second(const ChannelModel& model, const CoefficientPair& coeffs,
                       const Scaling& scaling, const ExpectationMethod& method) {
  // a~1 b~2 - a~2 b~1 = beta1 beta2 (a1 b2 - a2 b1)
  const double det = scaling.beta1() * scaling.beta2() * static_cast<double>(coeffs.determinant());
  const double det_sq = det * det;
  const IntVec2& a = coeffs.a();
  const ExpectationEstimate base = expect(
      model,
      [&](double r1, double r2) { return 0.5 * std::log2(m_integrand(a, scaling, r1, r2) / det_sq); },
      method);
  const auto offset = beta_offsets(scaling);
  return {{base.value + offset[0], base.value + offset[1]}, base.std_error};
}

RatePair achievable_rate_pair(const ChannelModel& model, const CoefficientPair& coeffs,
                              const Scaling& scaling, const ExpectationMethod& method) {
  const StageRates first = rate_first(model, coeffs.a(), scaling, method);
  const StageRates second = rate_second(model, coeffs, scaling, method);

  RatePair out;
  out.breakdown = {first.value, second.value, first.std_error, second.std_error};
  out.valid = true;
  std::array<double, 2> rates{};
  for (int l = 0; l < 2; ++l) {
    if (coeffs.b()[l] == 0) {
      rates[l] = first.value[l];
      out.valid = out.valid && first.value[l] >= 0.0;
    } else if (coeffs.a()[l] == 0) {
      rates[l] = second.value[l];
      out.valid = out.valid && second.value[l] >= 0.0;
    } else {
      rates[l] = std::min(first.value[l], second.value[l]);
      out.valid = out.valid && first.value[l] >= 0.0 && second.value[l] >= 0.0;
    }
  }
  out.R1 = std::max(rates[0], 0.0);
  out.R2 = std::max(rates[1], 0.0);
  return out;
}

Pentagon capacity_pentagon(const ChannelModel& model, const ExpectationMethod& method) {
  const auto c1 = expect(model, [](double r1, double) { return 0.5 * std::log2(1.0 + r1 * r1); }, method);
  const auto c2 = expect(model, [](double, double r2) { return 0.5 * std::log2(1.0 + r2 * r2); }, method);
  const auto cs = ergodic_capacity(model, method);
  return {c1.value, c2.value, cs.value, c1.std_error, c2.std_error, cs.std_error};
}

}  // namespace cfma
