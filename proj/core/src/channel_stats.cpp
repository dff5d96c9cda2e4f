#include "cfma/channel_stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "cfma/error.hpp"
#include "cfma/gauss_hermite.hpp"
#include "cfma/parallel.hpp"
#include "cfma/summation.hpp"

namespace cfma {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void invalid(const std::string& parameter, const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, parameter, what);
}

double parse_number(std::string_view text, const std::string& parameter) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    invalid(parameter, "cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<double> read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("empirical", "cannot open sample file '" + path + "'");
  std::vector<double> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    samples.push_back(parse_number(line, path + ":" + std::to_string(line_no)));
  }
  return samples;
}

}  // namespace

// --- GainDistribution -------------------------------------------------------

GainDistribution GainDistribution::degenerate(double value) {
  if (!std::isfinite(value)) invalid("gain", "degenerate value must be finite");
  return GainDistribution(Degenerate{value});
}

GainDistribution GainDistribution::gaussian(double mean, double variance) {
  if (!std::isfinite(mean) || !std::isfinite(variance)) {
    invalid("gain", "gaussian parameters must be finite");
  }
  if (variance < 0.0) invalid("variance", "gaussian variance must be >= 0");
  if (variance == 0.0) return degenerate(mean);
  return GainDistribution(Gaussian{mean, variance});
}

GainDistribution GainDistribution::empirical(std::vector<double> samples,
                                             std::string source) {
  if (samples.empty()) invalid("empirical", "empirical sample list is empty");
  if (!std::all_of(samples.begin(), samples.end(), [](double s) { return std::isfinite(s); })) {
    invalid("empirical", "empirical samples must be finite");
  }
  return GainDistribution(Empirical{std::move(samples), std::move(source)});
}

GainDistribution GainDistribution::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    invalid("gain", "expected 'kind:params', got '" + std::string(text) + "'");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  if (kind == "degenerate") return degenerate(parse_number(rest, "degenerate"));
  if (kind == "gaussian") {
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) {
      invalid("gaussian", "expected 'gaussian:mean,variance'");
    }
    return gaussian(parse_number(rest.substr(0, comma), "gaussian.mean"),
                    parse_number(rest.substr(comma + 1), "gaussian.variance"));
  }
  if (kind == "empirical") {
    std::string path(rest);
    return empirical(read_samples(path), path);
  }
  invalid("gain", "unknown gain kind '" + std::string(kind) + "'");
}

std::string GainDistribution::to_string() const {
  return std::visit(
      overloaded{
          [](const Degenerate& d) { return "degenerate:" + format_number(d.value); },
          [](const Gaussian& g) {
            return "gaussian:" + format_number(g.mean) + "," + format_number(g.variance);
          },
          [](const Empirical& e) {
            return "empirical:" + (e.source.empty()
                                       ? "<" + std::to_string(e.samples.size()) + " samples>"
                                       : e.source);
          },
      },
      law_);
}

double GainDistribution::mean() const {
  return std::visit(overloaded{
                        [](const Degenerate& d) { return d.value; },
                        [](const Gaussian& g) { return g.mean; },
                        [](const Empirical& e) {
                          return pairwise_sum(e.samples) / static_cast<double>(e.samples.size());
                        },
                    },
                    law_);
}

double GainDistribution::variance() const {
  return std::visit(overloaded{
                        [](const Degenerate&) { return 0.0; },
                        [](const Gaussian& g) { return g.variance; },
                        [](const Empirical& e) {
                          const double n = static_cast<double>(e.samples.size());
                          const double m = pairwise_sum(e.samples) / n;
                          std::vector<double> sq(e.samples.size());
                          std::transform(e.samples.begin(), e.samples.end(), sq.begin(),
                                         [m](double s) { return (s - m) * (s - m); });
                          return pairwise_sum(sq) / n;
                        },
                    },
                    law_);
}

bool operator==(const GainDistribution& a, const GainDistribution& b) {
  return std::visit(
      overloaded{
          [](const Degenerate& x, const Degenerate& y) { return x.value == y.value; },
          [](const Gaussian& x, const Gaussian& y) {
            return x.mean == y.mean && x.variance == y.variance;
          },
          [](const Empirical& x, const Empirical& y) { return x.samples == y.samples; },
          [](const auto&, const auto&) { return false; },
      },
      a.law_, b.law_);
}

// --- ChannelModel -----------------------------------------------------------

ChannelModel::ChannelModel(GainDistribution gain1, GainDistribution gain2, double power)
    : gain1_(std::move(gain1)), gain2_(std::move(gain2)), power_(power) {
  if (!(power > 0.0) || !std::isfinite(power)) invalid("power", "power must be finite and > 0");
}

ChannelModel ChannelModel::with_negated_gain2() const {
  GainDistribution negated = std::visit(
      overloaded{
          [](const Degenerate& d) { return GainDistribution::degenerate(-d.value); },
          [](const Gaussian& g) { return GainDistribution::gaussian(-g.mean, g.variance); },
          [](const Empirical& e) {
            std::vector<double> s(e.samples);
            for (double& v : s) v = -v;
            return GainDistribution::empirical(std::move(s), e.source);
          },
      },
      gain2_.law());
  return ChannelModel(gain1_, std::move(negated), power_);
}

// --- methods ----------------------------------------------------------------

std::string describe(const ExpectationMethod& method) {
  return std::visit(
      overloaded{
          [](const MonteCarlo& m) {
            return "mc(seed=" + std::to_string(m.seed) + ",samples=" + std::to_string(m.n_samples) + ")";
          },
          [](const GaussHermite& g) { return "quadrature(nodes=" + std::to_string(g.nodes_per_dim) + ")"; },
          [](const Exact&) { return std::string("exact"); },
          [](const AutoMethod&) { return std::string("auto"); },
      },
      method);
}

ExpectationMethod resolve_method(const ChannelModel& model, const ExpectationMethod& method) {
  const auto* automatic = std::get_if<AutoMethod>(&method);
  if (!automatic) return method;
  if (model.both_degenerate()) return Exact{};
  if (!model.has_empirical()) return GaussHermite{automatic->nodes_per_dim};
  return MonteCarlo{automatic->seed, automatic->n_samples};
}

ExpectationMethod with_seed(const ExpectationMethod& method, std::uint64_t seed) {
  ExpectationMethod out = method;
  if (auto* mc = std::get_if<MonteCarlo>(&out)) mc->seed = seed;
  if (auto* automatic = std::get_if<AutoMethod>(&out)) automatic->seed = seed;
  return out;
}

bool is_stochastic(const ChannelModel& model, const ExpectationMethod& method) {
  return std::holds_alternative<MonteCarlo>(resolve_method(model, method)) &&
         !model.both_degenerate();
}

// --- sampling ---------------------------------------------------------------

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  auto splitmix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  return splitmix(master ^ splitmix(index));
}

namespace {

// Draws effective gains rho = sqrt(P) h for one user from one stream.
class GainSampler {
 public:
  GainSampler(const GainDistribution& gain, double sqrt_power)
      : gain_(gain), scale_(sqrt_power) {
    if (const auto* g = std::get_if<Gaussian>(&gain.law())) {
      normal_ = std::normal_distribution<double>(g->mean, std::sqrt(g->variance));
    } else if (const auto* e = std::get_if<Empirical>(&gain.law())) {
      index_ = std::uniform_int_distribution<std::size_t>(0, e->samples.size() - 1);
    }
  }

  double operator()(std::mt19937_64& rng) {
    return std::visit(overloaded{
                          [&](const Degenerate& d) { return scale_ * d.value; },
                          [&](const Gaussian&) { return scale_ * normal_(rng); },
                          [&](const Empirical& e) { return scale_ * e.samples[index_(rng)]; },
                      },
                      gain_.law());
  }

 private:
  const GainDistribution& gain_;
  double scale_;
  std::normal_distribution<double> normal_;
  std::uniform_int_distribution<std::size_t> index_;
};

// Sample i lives in chunk i / kMonteCarloChunk, drawn from the stream
// derive_seed(seed, chunk); within a chunk user 1 then user 2 per sample.
void fill_chunk(const ChannelModel& model, std::uint64_t seed, std::int64_t chunk,
                std::int64_t count, EffectiveGain* out) {
  std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(chunk)));
  const double sqrt_power = std::sqrt(model.power());
  GainSampler s1(model.gain1(), sqrt_power);
  GainSampler s2(model.gain2(), sqrt_power);
  for (std::int64_t i = 0; i < count; ++i) {
    const double r1 = s1(rng);
    const double r2 = s2(rng);
    out[i] = {r1, r2};
  }
}

std::int64_t chunk_count(std::int64_t n) {
  return (n + kMonteCarloChunk - 1) / kMonteCarloChunk;
}

[[noreturn]] void non_finite(double rho1, double rho2, double value) {
  std::ostringstream os;
  os << "integrand is " << value << " at rho = (" << rho1 << ", " << rho2 << ")";
  throw Error(ErrorCode::NonFiniteIntegrand, "integrand", os.str());
}

double checked(const Integrand& integrand, double rho1, double rho2) {
  const double v = integrand(rho1, rho2);
  if (!std::isfinite(v)) non_finite(rho1, rho2, v);
  return v;
}

ExpectationEstimate monte_carlo(const ChannelModel& model, const Integrand& integrand,
                                const MonteCarlo& mc) {
  if (mc.n_samples < 1) invalid("samples", "MonteCarlo needs at least one sample");
  const std::int64_t n = mc.n_samples;
  std::vector<double> values(static_cast<std::size_t>(n));
  const std::int64_t chunks = chunk_count(n);
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    const std::int64_t begin = static_cast<std::int64_t>(c) * kMonteCarloChunk;
    const std::int64_t count = std::min(kMonteCarloChunk, n - begin);
    std::vector<EffectiveGain> gains(static_cast<std::size_t>(count));
    fill_chunk(model, mc.seed, static_cast<std::int64_t>(c), count, gains.data());
    for (std::int64_t i = 0; i < count; ++i) {
      values[begin + i] = checked(integrand, gains[i].first, gains[i].second);
    }
  });

  ExpectationEstimate est;
  est.method = mc;
  est.n_evaluations = n;
  est.value = pairwise_sum(values) / static_cast<double>(n);
  if (n > 1 && !model.both_degenerate()) {
    for (double& v : values) v = (v - est.value) * (v - est.value);
    const double sample_var = pairwise_sum(values) / static_cast<double>(n - 1);
    est.std_error = std::sqrt(sample_var / static_cast<double>(n));
  }
  return est;
}

// 1-D rule for one user's effective gain: (nodes, weights).
void user_rule(const GainDistribution& gain, double sqrt_power, int nodes_per_dim,
               std::vector<double>& x, std::vector<double>& w) {
  if (const auto* d = std::get_if<Degenerate>(&gain.law())) {
    x = {sqrt_power * d->value};
    w = {1.0};
    return;
  }
  const auto& g = std::get<Gaussian>(gain.law());
  const GaussHermiteRule& rule = gauss_hermite_rule(nodes_per_dim);
  const double sd = std::sqrt(g.variance);
  x.resize(rule.nodes.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = sqrt_power * (g.mean + sd * rule.nodes[i]);
  w = rule.weights;
}

ExpectationEstimate gauss_hermite(const ChannelModel& model, const Integrand& integrand,
                                  const GaussHermite& gh) {
  if (model.has_empirical()) {
    throw Error(ErrorCode::MethodUnsupported, "method",
                "Gauss-Hermite quadrature needs Gaussian or degenerate gains");
  }
  if (gh.nodes_per_dim < 1) invalid("nodes", "nodes_per_dim must be positive");
  const double sqrt_power = std::sqrt(model.power());
  std::vector<double> x1, w1, x2, w2;
  user_rule(model.gain1(), sqrt_power, gh.nodes_per_dim, x1, w1);
  user_rule(model.gain2(), sqrt_power, gh.nodes_per_dim, x2, w2);

  std::vector<double> terms(x1.size() * x2.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < x1.size(); ++i) {
    for (std::size_t j = 0; j < x2.size(); ++j) {
      terms[k++] = w1[i] * w2[j] * checked(integrand, x1[i], x2[j]);
    }
  }
  ExpectationEstimate est;
  est.method = gh;
  est.n_evaluations = static_cast<std::int64_t>(terms.size());
  est.value = pairwise_sum(terms);
  return est;
}

ExpectationEstimate exact(const ChannelModel& model, const Integrand& integrand) {
  if (!model.both_degenerate()) {
    throw Error(ErrorCode::MethodUnsupported, "method",
                "exact evaluation needs both gains degenerate");
  }
  const double sqrt_power = std::sqrt(model.power());
  const double r1 = sqrt_power * std::get<Degenerate>(model.gain1().law()).value;
  const double r2 = sqrt_power * std::get<Degenerate>(model.gain2().law()).value;
  ExpectationEstimate est;
  est.method = Exact{};
  est.n_evaluations = 1;
  est.value = checked(integrand, r1, r2);
  return est;
}

}  // namespace

std::vector<EffectiveGain> effective_gain_samples(const ChannelModel& model, std::int64_t n,
                                                  std::uint64_t seed) {
  if (n < 1) invalid("n", "sample count must be >= 1");
  std::vector<EffectiveGain> out(static_cast<std::size_t>(n));
  const std::int64_t chunks = chunk_count(n);
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    const std::int64_t begin = static_cast<std::int64_t>(c) * kMonteCarloChunk;
    fill_chunk(model, seed, static_cast<std::int64_t>(c), std::min(kMonteCarloChunk, n - begin),
               out.data() + begin);
  });
  return out;
}

ExpectationEstimate expect(const ChannelModel& model, const Integrand& integrand,
                           const ExpectationMethod& method) {
  const ExpectationMethod resolved = resolve_method(model, method);
  return std::visit(
      overloaded{
          [&](const MonteCarlo& mc) { return monte_carlo(model, integrand, mc); },
          [&](const GaussHermite& gh) { return gauss_hermite(model, integrand, gh); },
          [&](const Exact&) { return exact(model, integrand); },
          [&](const AutoMethod&) -> ExpectationEstimate { std::abort(); },
      },
      resolved);
}

ChannelMoments moments(const ChannelModel& model) {
  const double p = model.power();
  const double s = std::sqrt(p);
  ChannelMoments m;
  m.mu1 = s * model.gain1().mean();
  m.mu2 = s * model.gain2().mean();
  m.var1 = p * model.gain1().variance();
  m.var2 = p * model.gain2().variance();
  m.q1 = 1.0 + m.var1 + m.mu1 * m.mu1;
  m.q2 = 1.0 + m.var2 + m.mu2 * m.mu2;
  return m;
}

ExpectationEstimate ergodic_capacity(const ChannelModel& model, const ExpectationMethod& method) {
  return expect(
      model, [](double r1, double r2) { return 0.5 * std::log2(1.0 + r1 * r1 + r2 * r2); },
      method);
}

}  // namespace cfma
