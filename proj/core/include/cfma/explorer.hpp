#pragma once

// Figure-level compositions: rate-region traces, region classification over
// channel-statistics grids and decoding-coefficient comparisons.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfma/capacity_conditions.hpp"
#include "cfma/cfma_rates.hpp"
#include "cfma/channel_stats.hpp"

namespace cfma {

struct TracePoint {
  double R1 = 0.0;
  double R2 = 0.0;
  double gamma = 0.0;
  std::string coeffs;  // CoefficientPair::label()
  bool valid = true;
};

struct RegionTrace {
  std::vector<TracePoint> points;
  Pentagon pentagon;
  bool includes_sic_corners = false;
  double max_std_error = 0.0;  // largest std error among all rate terms
};

struct TraceOptions {
  bool include_sic_corners = false;
  bool keep_invalid = false;  // keep pairs with a negative selected rate
};

// No convex hull or time sharing is applied to the points.
RegionTrace trace_region(const ChannelModel& model,
                         const std::vector<CoefficientPair>& coeff_sets,
                         const std::vector<double>& gammas,
                         const ExpectationMethod& method,
                         const TraceOptions& options = {});

// II = complement of I; III = achievable at gamma0 = mu1/mu2; IV = II \ III.
// A cell labelled II means the gamma0 test was disabled.
enum class Region { I, II, III, IV, Indeterminate };

std::string_view to_string(Region region) noexcept;

struct ClassificationCell {
  std::map<std::string, double> params;
  Region label = Region::I;
  bool achievable_optimal = false;  // region II
  bool achievable_gamma0 = false;   // region III
  std::optional<double> gamma0;
  std::optional<ConditionValue> gamma0_sufficient;
  std::optional<std::string> error;  // set when the cell failed to evaluate

  bool in_region(Region region) const noexcept;
};

struct ClassifyOptions {
  bool test_gamma0 = true;
};

ClassificationCell classify_point(const ChannelModel& model,
                                  const GammaScan& scan,
                                  const ExpectationMethod& method,
                                  const ClassifyOptions& options = {});

// Statistics of both Gaussian gains (of rho, with power 1 unless set).
// Axis names: mu, sigma, var (both users), mu1, mu2, sigma1, sigma2, var1,
// var2, power.
struct ModelTemplate {
  double mu1 = 0.0, mu2 = 0.0;
  double var1 = 0.0, var2 = 0.0;
  double power = 1.0;

  ChannelModel instantiate(const std::map<std::string, double>& params) const;
};

struct ParamAxis {
  std::string name;
  std::vector<double> values;

  static ParamAxis linspace(std::string name, double lo, double hi, int n);
};

// Cells are emitted row-major (last axis fastest). Each cell gets a seed
// derived from the method's seed and its row-major index, so the output does
// not depend on the worker count. Failing cells carry an error message.
std::vector<ClassificationCell> sweep_classify(const std::vector<ParamAxis>& axes,
                                               const ModelTemplate& model_template,
                                               const GammaScan& scan,
                                               const ExpectationMethod& method,
                                               const ClassifyOptions& options = {});

struct CoeffEntry {
  IntVec2 a{};
  std::optional<IntVec2> b;  // unit vector making (a, b) unimodular, if any
  std::vector<GammaInterval> intervals;
  double total_measure = 0.0;
};

// a1, a2 in [1, a_max]; sign flips of a are covered by scanning both gamma
// signs. Entries in enumeration order (a1 outer).
std::vector<CoeffEntry> coeff_comparison(const ChannelModel& model, int a_max,
                                         const GammaScan& scan,
                                         const ExpectationMethod& method);

}  // namespace cfma
