#pragma once

// Achievable rate pair of compute-forward multiple access: the receiver
// decodes sum_l a_l t_l, then sum_l b_l t_l, and solves for both messages.

#include <array>
#include <string>

#include "cfma/channel_stats.hpp"

namespace cfma {

using IntVec2 = std::array<int, 2>;

// Decoding coefficients for the two linear combinations. Construction fails
// with DegenerateCoefficients unless a and b are linearly independent.
class CoefficientPair {
 public:
  CoefficientPair(IntVec2 a, IntVec2 b);

  const IntVec2& a() const noexcept { return a_; }
  const IntVec2& b() const noexcept { return b_; }

  long long determinant() const noexcept {
    return static_cast<long long>(a_[0]) * b_[1] -
           static_cast<long long>(a_[1]) * b_[0];
  }
  bool unimodular() const noexcept {
    return determinant() * determinant() == 1;
  }

  // "a=(1,1);b=(0,1)"
  std::string label() const;

 private:
  IntVec2 a_;
  IntVec2 b_;
};

// Lattice scalings (beta1, beta2). Rates depend only on gamma = beta1/beta2,
// so the pair is stored normalized to beta2 = 1.
class Scaling {
 public:
  static Scaling from_betas(double beta1, double beta2);
  static Scaling from_gamma(double gamma);

  double gamma() const noexcept { return gamma_; }
  double beta1() const noexcept { return gamma_; }
  double beta2() const noexcept { return 1.0; }
  double beta(int user) const noexcept { return user == 1 ? gamma_ : 1.0; }

 private:
  explicit Scaling(double gamma) : gamma_(gamma) {}
  double gamma_;
};

// Signed per-user rates for one (model, coeffs, scaling). first[l] is
// r_l(a, beta), second[l] is r_l(b | a, beta); index 0 is user 1.
// Per-user values of each stage share one expectation, so the std errors
// are per stage.
struct RateBreakdown {
  std::array<double, 2> first{};
  std::array<double, 2> second{};
  double first_std_error = 0.0;
  double second_std_error = 0.0;
};

struct RatePair {
  double R1 = 0.0;
  double R2 = 0.0;
  bool valid = false;
  RateBreakdown breakdown;
};

struct Pentagon {
  double C1 = 0.0, C2 = 0.0, Csum = 0.0;
  double C1_std_error = 0.0, C2_std_error = 0.0, Csum_std_error = 0.0;
};

struct StageRates {
  std::array<double, 2> value{};
  double std_error = 0.0;
};

// M = (a~1^2 + a~2^2) + (a~1 rho2 - a~2 rho1)^2 with a~_l = a_l beta_l.
double m_integrand(const IntVec2& a, const Scaling& scaling, double rho1,
                   double rho2) noexcept;

// r_l(a, beta) = 1/2 E[log2(beta_l^2 (1 + rho1^2 + rho2^2) / M)], raw.
StageRates rate_first(const ChannelModel& model, const IntVec2& a,
                      const Scaling& scaling, const ExpectationMethod& method);

// r_l(b | a, beta) = 1/2 E[log2(beta_l^2 M / (a~1 b~2 - a~2 b~1)^2)], raw.
StageRates rate_second(const ChannelModel& model, const CoefficientPair& coeffs,
                       const Scaling& scaling, const ExpectationMethod& method);

// Per user: r(a) if b_l = 0, r(b|a) if a_l = 0, else the min of the two.
// valid is false if any selected rate is negative; R1, R2 are clamped at 0.
RatePair achievable_rate_pair(const ChannelModel& model,
                              const CoefficientPair& coeffs,
                              const Scaling& scaling,
                              const ExpectationMethod& method);

// Ergodic capacity pentagon: 1/2 E[log2(1 + rho_l^2)] and the sum bound.
Pentagon capacity_pentagon(const ChannelModel& model,
                           const ExpectationMethod& method);

}  // namespace cfma
