#include "cfma/capacity_conditions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cfma/error.hpp"
#include "cfma/parallel.hpp"

namespace cfma {

std::string_view to_string(ConditionKind kind) noexcept {
  switch (kind) {
    case ConditionKind::IffThm2: return "iff";
    case ConditionKind::SufficientLem2: return "sufficient";
    case ConditionKind::GeneralCoeffCaseIII: return "general_a";
    case ConditionKind::SufficientGamma0: return "gamma0";
    case ConditionKind::IidGaussian: return "iid_gaussian";
  }
  return "unknown";
}

std::string_view to_string(IntervalSource source) noexcept {
  switch (source) {
    case IntervalSource::Thm3CaseI: return "thm3_case1";
    case IntervalSource::Thm3CaseII: return "thm3_case2";
    case IntervalSource::NumericScan: return "scan";
  }
  return "unknown";
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Achievable: return "achievable";
    case Verdict::NotAchievable: return "not-achievable";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

Verdict verdict_of(const ExpectationEstimate& value) noexcept {
  if (value.value + 2.0 * value.std_error <= 0.0) return Verdict::Achievable;
  if (value.value - 2.0 * value.std_error > 0.0) return Verdict::NotAchievable;
  return Verdict::Indeterminate;
}

std::vector<double> GammaGrid::points() const {
  std::vector<double> out(static_cast<std::size_t>(n_points));
  if (spacing == Spacing::Linear) {
    for (int i = 0; i < n_points; ++i) out[i] = lo + (hi - lo) * i / (n_points - 1);
  } else {
    // Log spacing in |gamma|, kept ascending in signed gamma.
    const double sign = lo < 0.0 ? -1.0 : 1.0;
    const double a = std::log(std::abs(lo));
    const double b = std::log(std::abs(hi));
    for (int i = 0; i < n_points; ++i) out[i] = sign * std::exp(a + (b - a) * i / (n_points - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

GammaScan default_gamma_scan() {
  return {GammaGrid{-1e3, -1e-3, 512, GammaGrid::Spacing::Log},
          GammaGrid{1e-3, 1e3, 512, GammaGrid::Spacing::Log}};
}

double ScanResult::total_measure() const noexcept {
  double total = 0.0;
  for (const auto& iv : intervals) total += iv.length();
  return total;
}

namespace {

void require_gamma(double gamma) {
  if (gamma == 0.0 || !std::isfinite(gamma)) {
    throw Error(ErrorCode::SingularGamma, "gamma", "gamma must be finite and nonzero");
  }
}

// a1^2 gamma^2 + a2^2 + (a1 gamma rho2 - a2 rho1)^2
double general_f(const IntVec2& a, double gamma, double rho1, double rho2) noexcept {
  const double t1 = a[0] * gamma;
  const double t2 = a[1];
  const double cross = t1 * rho2 - t2 * rho1;
  return t1 * t1 + t2 * t2 + cross * cross;
}

ConditionValue log_ratio_condition(const ChannelModel& model, const IntVec2& a, double gamma,
                                   const ExpectationMethod& method, ConditionKind kind) {
  const double g2 = gamma * gamma;
  auto integrand = [&](double r1, double r2) {
    return 2.0 * std::log2(general_f(a, gamma, r1, r2)) - std::log2(g2 * (1.0 + r1 * r1 + r2 * r2));
  };
  return {expect(model, integrand, method), kind};
}

// Value x - scale * 2^C with C an estimate; propagates C's std error.
ExpectationEstimate minus_exp2_capacity(double x, double scale, const ExpectationEstimate& capacity) {
  ExpectationEstimate out = capacity;
  const double p = scale * std::exp2(capacity.value);
  out.value = x - p;
  out.std_error = p * std::numbers::ln2 * capacity.std_error;
  return out;
}

// Moves the nonpositive end of a sign-change bracket toward the root until
// the bracket is no wider than kBisectionTolerance; returns that end.
double refine_boundary(const std::function<double(double)>& condition, double positive_end,
                       double nonpositive_end) {
  while (std::abs(positive_end - nonpositive_end) > kBisectionTolerance) {
    const double mid = 0.5 * (positive_end + nonpositive_end);
    if (condition(mid) <= 0.0) {
      nonpositive_end = mid;
    } else {
      positive_end = mid;
    }
  }
  return nonpositive_end;
}

void validate(const GammaGrid& grid) {
  if (!std::isfinite(grid.lo) || !std::isfinite(grid.hi) || grid.lo == 0.0 || grid.hi == 0.0 ||
      (grid.lo < 0.0) != (grid.hi < 0.0) || !(grid.lo < grid.hi)) {
    throw Error(ErrorCode::InvalidArgument, "gamma_grid",
                "each gamma grid half needs lo < hi, both nonzero with the same sign");
  }
  if (grid.n_points < 16) {
    throw Error(ErrorCode::InvalidArgument, "gamma_grid.n_points", "gamma grid needs >= 16 points");
  }
}

}  // namespace

double f_integrand(double gamma, double rho1, double rho2) noexcept {
  return general_f({1, 1}, gamma, rho1, rho2);
}

ConditionValue condition_iff(const ChannelModel& model, double gamma, const ExpectationMethod& method) {
  require_gamma(gamma);
  return log_ratio_condition(model, {1, 1}, gamma, method, ConditionKind::IffThm2);
}

ConditionValue condition_sufficient(const ChannelModel& model, double gamma,
                                    const ExpectationMethod& method) {
  require_gamma(gamma);
  const ChannelMoments m = moments(model);
  const double mean_f = m.q2 * gamma * gamma - 2.0 * m.mu1 * m.mu2 * gamma + m.q1;
  return {minus_exp2_capacity(mean_f, std::abs(gamma), ergodic_capacity(model, method)),
          ConditionKind::SufficientLem2};
}

std::vector<GammaInterval> thm3_intervals(const ChannelModel& model, const ExpectationMethod& method) {
  const ChannelMoments m = moments(model);
  const double capacity = ergodic_capacity(model, method).value;
  const double half_rate = std::exp2(capacity - 1.0);
  const double mm = m.mu1 * m.mu2;
  const double qq = m.q1 * m.q2;

  std::vector<GammaInterval> out;
  const double g1 = (mm + half_rate) * (mm + half_rate) - qq;
  if (g1 >= 0.0) {
    const double r = std::sqrt(g1);
    out.push_back({(mm + half_rate - r) / m.q2, (mm + half_rate + r) / m.q2, IntervalSource::Thm3CaseI});
  }
  const double g2 = (mm - half_rate) * (mm - half_rate) - qq;
  if (g2 >= 0.0 && mm < 0.0) {
    const double r = std::sqrt(g2);
    out.push_back({(mm - half_rate - r) / m.q2, (mm - half_rate + r) / m.q2, IntervalSource::Thm3CaseII});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  return out;
}

Gamma0Result condition_gamma0(const ChannelModel& model, const ExpectationMethod& method) {
  const ChannelMoments m = moments(model);
  if (m.mu2 == 0.0) throw Error(ErrorCode::ZeroMean, "mu2", "gamma0 = mu1/mu2 needs mu2 != 0");
  if (m.mu1 == 0.0) throw Error(ErrorCode::ZeroMean, "mu1", "gamma0 = mu1/mu2 is zero");
  Gamma0Result out;
  out.gamma0 = m.mu1 / m.mu2;
  const double lhs = out.gamma0 * (m.var2 + 1.0) + (m.var1 + 1.0) / out.gamma0;
  out.condition = {minus_exp2_capacity(lhs, 1.0, ergodic_capacity(model, method)),
                   ConditionKind::SufficientGamma0};
  out.achievable = m.mu1 * m.mu2 > 0.0 && verdict_of(out.condition.value) == Verdict::Achievable;
  return out;
}

ConditionValue condition_iid_gaussian(const ChannelModel& model, const ExpectationMethod& method) {
  const auto& g1 = model.gain1();
  if (!(g1 == model.gain2()) || g1.is_empirical()) {
    throw Error(ErrorCode::NotIIDGaussian, "channel", "both gains must share one Gaussian law");
  }
  if (g1.mean() == 0.0) {
    throw Error(ErrorCode::NotIIDGaussian, "mu", "i.i.d. Gaussian condition needs a nonzero mean");
  }
  const ChannelMoments m = moments(model);
  const ExpectationEstimate capacity = ergodic_capacity(model, method);
  ExpectationEstimate out = minus_exp2_capacity(m.var1, 0.5, capacity);
  out.value += 1.0;
  return {out, ConditionKind::IidGaussian};
}

ConditionValue condition_general_a(const ChannelModel& model, const IntVec2& a, double gamma,
                                   const ExpectationMethod& method) {
  if (a[0] == 0 || a[1] == 0) {
    throw Error(ErrorCode::ZeroCoefficient, "a", "general condition needs a1 != 0 and a2 != 0");
  }
  require_gamma(gamma);
  return log_ratio_condition(model, a, gamma, method, ConditionKind::GeneralCoeffCaseIII);
}

ScanResult gamma_range_scan(const ChannelModel& model, const IntVec2& a, const GammaScan& scan,
                            const ExpectationMethod& method) {
  if (scan.empty()) throw Error(ErrorCode::InvalidArgument, "gamma_grid", "empty gamma scan");
  for (const auto& half : scan) validate(half);
  const ExpectationMethod resolved = resolve_method(model, method);
  const bool iff = a == IntVec2{1, 1};
  auto evaluate = [&](double gamma) {
    return iff ? condition_iff(model, gamma, resolved) : condition_general_a(model, a, gamma, resolved);
  };
  auto value_at = [&](double gamma) { return evaluate(gamma).value.value; };

  ScanResult out;
  for (const auto& half : scan) {
    const std::vector<double> pts = half.points();
    std::vector<ScanSample> samples(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { samples[i] = {pts[i], evaluate(pts[i])}; });

    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n;) {
      if (samples[i].condition.value.value > 0.0) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < n && samples[j + 1].condition.value.value <= 0.0) ++j;
      const double lo = i == 0 ? pts[0] : refine_boundary(value_at, pts[i - 1], pts[i]);
      const double hi = j + 1 == n ? pts[n - 1] : refine_boundary(value_at, pts[j + 1], pts[j]);
      out.intervals.push_back({lo, hi, IntervalSource::NumericScan});
      i = j + 1;
    }
    out.samples.insert(out.samples.end(), samples.begin(), samples.end());
  }
  std::sort(out.samples.begin(), out.samples.end(),
            [](const auto& x, const auto& y) { return x.gamma < y.gamma; });
  std::sort(out.intervals.begin(), out.intervals.end(),
            [](const auto& x, const auto& y) { return x.lo < y.lo; });

  bool any_achievable = false;
  bool all_failing = true;
  for (const auto& s : out.samples) {
    const Verdict v = verdict_of(s.condition.value);
    any_achievable = any_achievable || v == Verdict::Achievable;
    all_failing = all_failing && v == Verdict::NotAchievable;
  }
  out.verdict = any_achievable ? Verdict::Achievable
                               : (all_failing ? Verdict::NotAchievable : Verdict::Indeterminate);
  return out;
}

SumCapacityReport sum_capacity_report(const ChannelModel& model, const GammaScan& scan,
                                      const ExpectationMethod& method) {
  const ExpectationMethod resolved = resolve_method(model, method);
  SumCapacityReport report;
  const ExpectationEstimate capacity = ergodic_capacity(model, resolved);
  report.capacity = capacity.value;
  report.capacity_std_error = capacity.std_error;

  report.intervals = thm3_intervals(model, resolved);
  const ScanResult scanned = gamma_range_scan(model, {1, 1}, scan, resolved);
  report.intervals.insert(report.intervals.end(), scanned.intervals.begin(), scanned.intervals.end());
  for (const auto& s : scanned.samples) report.checked_gammas.emplace_back(s.gamma, s.condition);

  Verdict verdict = scanned.verdict;
  const ChannelMoments m = moments(model);
  if (m.mu1 != 0.0 && m.mu2 != 0.0) {
    const double gamma0 = m.mu1 / m.mu2;
    const ConditionValue at_gamma0 = condition_iff(model, gamma0, resolved);
    report.checked_gammas.emplace_back(gamma0, at_gamma0);
    const Verdict v0 = verdict_of(at_gamma0.value);
    if (v0 == Verdict::Achievable) {
      verdict = Verdict::Achievable;
    } else if (v0 == Verdict::Indeterminate && verdict == Verdict::NotAchievable) {
      verdict = Verdict::Indeterminate;
    }
  }
  for (const auto& iv : report.intervals) {
    if (iv.provenance != IntervalSource::NumericScan && iv.length() >= 0.0) verdict = Verdict::Achievable;
  }
  report.verdict = verdict;
  report.achievable = verdict == Verdict::Achievable;
  return report;
}

}  // namespace cfma
