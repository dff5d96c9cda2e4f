#pragma once

// Sum-capacity achievability tests for a = (1,1), b in {(0,1), (1,0)} and
// the generalized a = (a1, a2) condition. Every condition value is signed:
// <= 0 means "achievable" for the tested gamma.

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "cfma/cfma_rates.hpp"
#include "cfma/channel_stats.hpp"

namespace cfma {

enum class ConditionKind {
  IffThm2,              // E[log2 f^2 / (gamma^2 (1 + rho1^2 + rho2^2))]
  SufficientLem2,       // E[f] - |gamma| 2^C
  GeneralCoeffCaseIII,  // iff condition with a = (a1, a2)
  SufficientGamma0,     // (mu1/mu2)(var2+1) + (mu2/mu1)(var1+1) - 2^C
  IidGaussian,          // var - (2^(C-1) - 1)
};

std::string_view to_string(ConditionKind kind) noexcept;

struct ConditionValue {
  ExpectationEstimate value;
  ConditionKind kind = ConditionKind::IffThm2;
};

enum class IntervalSource { Thm3CaseI, Thm3CaseII, NumericScan };

std::string_view to_string(IntervalSource source) noexcept;

struct GammaInterval {
  double lo = 0.0;
  double hi = 0.0;
  IntervalSource provenance = IntervalSource::NumericScan;

  double length() const noexcept { return hi - lo; }
  bool contains(double gamma) const noexcept { return lo <= gamma && gamma <= hi; }
};

enum class Verdict { Achievable, NotAchievable, Indeterminate };

std::string_view to_string(Verdict verdict) noexcept;

// Noise-aware reading of a condition value: achievable only when
// value + 2 se <= 0, not achievable when value - 2 se > 0.
Verdict verdict_of(const ExpectationEstimate& value) noexcept;

// One sign half of a gamma scan: both ends nonzero with the same sign.
struct GammaGrid {
  enum class Spacing { Linear, Log };
  double lo = 1e-3;
  double hi = 1e3;
  int n_points = 512;
  Spacing spacing = Spacing::Log;

  std::vector<double> points() const;  // ascending
};

using GammaScan = std::vector<GammaGrid>;

// 512 log-spaced points per sign over |gamma| in [1e-3, 1e3].
GammaScan default_gamma_scan();

inline constexpr double kBisectionTolerance = 1e-6;

struct ScanSample {
  double gamma = 0.0;
  ConditionValue condition;
};

struct ScanResult {
  std::vector<GammaInterval> intervals;
  std::vector<ScanSample> samples;  // grid evaluations, ascending gamma
  Verdict verdict = Verdict::NotAchievable;

  double total_measure() const noexcept;
};

struct Gamma0Result {
  double gamma0 = 0.0;
  ConditionValue condition;  // SufficientGamma0
  bool achievable = false;   // mu1 mu2 > 0 and condition verdict achievable
};

struct SumCapacityReport {
  bool achievable = false;
  Verdict verdict = Verdict::NotAchievable;
  std::vector<GammaInterval> intervals;
  std::vector<std::pair<double, ConditionValue>> checked_gammas;
  double capacity = 0.0;
  double capacity_std_error = 0.0;
};

// f = gamma^2 + 1 + (gamma rho2 - rho1)^2.
double f_integrand(double gamma, double rho1, double rho2) noexcept;

ConditionValue condition_iff(const ChannelModel& model, double gamma,
                             const ExpectationMethod& method);

// Uses the closed form E[f] = q2 gamma^2 - 2 mu1 mu2 gamma + q1.
ConditionValue condition_sufficient(const ChannelModel& model, double gamma,
                                    const ExpectationMethod& method);

// Closed-form Case I / Case II intervals of the sufficient condition.
std::vector<GammaInterval> thm3_intervals(const ChannelModel& model,
                                          const ExpectationMethod& method);

Gamma0Result condition_gamma0(const ChannelModel& model,
                              const ExpectationMethod& method);

// Requires gain1 == gain2, Gaussian or degenerate, nonzero mean.
ConditionValue condition_iid_gaussian(const ChannelModel& model,
                                      const ExpectationMethod& method);

ConditionValue condition_general_a(const ChannelModel& model, const IntVec2& a,
                                   double gamma, const ExpectationMethod& method);

// Evaluates condition_general_a on every grid point, brackets sign changes
// and bisects each to |dgamma| <= 1e-6. Returns maximal intervals where the
// condition is <= 0. MC evaluations reuse the method's seed at every gamma.
ScanResult gamma_range_scan(const ChannelModel& model, const IntVec2& a,
                            const GammaScan& scan,
                            const ExpectationMethod& method);

// Theorem-3 intervals, the a = (1,1) scan and the iff value at gamma0 (when
// defined) combined into one verdict.
SumCapacityReport sum_capacity_report(const ChannelModel& model,
                                      const GammaScan& scan,
                                      const ExpectationMethod& method);

}  // namespace cfma
