#pragma once

// Channel-gain laws for the two-user real fading MAC and the expectation
// engine behind every E_h[.] in the rate and condition formulas.
//
// All expectations are taken over the effective gains rho_l = sqrt(P) * h_l.
// Rates are reported in bits (log base 2).

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cfma {

struct Degenerate {
  double value = 0.0;
};

struct Gaussian {
  double mean = 0.0;
  double variance = 0.0;
};

struct Empirical {
  std::vector<double> samples;
  std::string source;  // file the samples came from, if any
};

// Per-user law of the channel gain h_l. Immutable once built; the factory
// functions validate and normalize (Gaussian with zero variance becomes
// Degenerate).
class GainDistribution {
 public:
  using Law = std::variant<Degenerate, Gaussian, Empirical>;

  GainDistribution() = default;

  static GainDistribution degenerate(double value);
  static GainDistribution gaussian(double mean, double variance);
  static GainDistribution empirical(std::vector<double> samples,
                                    std::string source = {});

  // Canonical text form: "degenerate:v", "gaussian:mu,var",
  // "empirical:path.csv" (one decimal sample per line).
  static GainDistribution parse(std::string_view text);
  std::string to_string() const;

  const Law& law() const noexcept { return law_; }
  bool is_degenerate() const noexcept {
    return std::holds_alternative<Degenerate>(law_);
  }
  bool is_gaussian() const noexcept {
    return std::holds_alternative<Gaussian>(law_);
  }
  bool is_empirical() const noexcept {
    return std::holds_alternative<Empirical>(law_);
  }

  double mean() const;
  double variance() const;

  friend bool operator==(const GainDistribution& a, const GainDistribution& b);

 private:
  explicit GainDistribution(Law law) : law_(std::move(law)) {}
  Law law_{Degenerate{}};
};

// Independent gain laws for both users and the transmit power P > 0.
class ChannelModel {
 public:
  ChannelModel(GainDistribution gain1, GainDistribution gain2, double power = 1.0);

  const GainDistribution& gain1() const noexcept { return gain1_; }
  const GainDistribution& gain2() const noexcept { return gain2_; }
  const GainDistribution& gain(int user) const noexcept {
    return user == 1 ? gain1_ : gain2_;
  }
  double power() const noexcept { return power_; }

  bool both_degenerate() const noexcept {
    return gain1_.is_degenerate() && gain2_.is_degenerate();
  }
  bool has_empirical() const noexcept {
    return gain1_.is_empirical() || gain2_.is_empirical();
  }

  // Same model with the law of h_2 replaced by that of -h_2.
  ChannelModel with_negated_gain2() const;

 private:
  GainDistribution gain1_;
  GainDistribution gain2_;
  double power_;
};

struct MonteCarlo {
  std::uint64_t seed = 0;
  std::int64_t n_samples = 1'000'000;
};

struct GaussHermite {
  int nodes_per_dim = 64;
};

struct Exact {};

// Resolved per model: Exact when both gains are degenerate, GaussHermite when
// neither is empirical, MonteCarlo otherwise.
struct AutoMethod {
  std::uint64_t seed = 0;
  std::int64_t n_samples = 1'000'000;
  int nodes_per_dim = 64;
};

using ExpectationMethod = std::variant<MonteCarlo, GaussHermite, Exact, AutoMethod>;

std::string describe(const ExpectationMethod& method);

ExpectationMethod resolve_method(const ChannelModel& model,
                                 const ExpectationMethod& method);

// Replaces the seed of MonteCarlo/AutoMethod; other methods pass through.
ExpectationMethod with_seed(const ExpectationMethod& method, std::uint64_t seed);

// Whether estimates under this method carry sampling noise.
bool is_stochastic(const ChannelModel& model, const ExpectationMethod& method);

struct ExpectationEstimate {
  double value = 0.0;
  double std_error = 0.0;
  ExpectationMethod method = Exact{};  // always a resolved method
  std::int64_t n_evaluations = 0;
};

struct ChannelMoments {
  double mu1 = 0.0, mu2 = 0.0;
  double var1 = 0.0, var2 = 0.0;
  double q1 = 1.0, q2 = 1.0;  // 1 + E[rho_l^2]
};

using EffectiveGain = std::pair<double, double>;
using Integrand = std::function<double(double rho1, double rho2)>;

// Counter-based stream split: mixes `index` into `master` with a fixed
// public hash (splitmix64) so derived streams do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

// Number of samples drawn from one derived stream.
inline constexpr std::int64_t kMonteCarloChunk = 1 << 16;

std::vector<EffectiveGain> effective_gain_samples(const ChannelModel& model,
                                                  std::int64_t n,
                                                  std::uint64_t seed);

ExpectationEstimate expect(const ChannelModel& model, const Integrand& integrand,
                           const ExpectationMethod& method);

ChannelMoments moments(const ChannelModel& model);

// C = 1/2 E[log2(1 + rho1^2 + rho2^2)], bits per real channel use.
ExpectationEstimate ergodic_capacity(const ChannelModel& model,
                                     const ExpectationMethod& method);

}  // namespace cfma
