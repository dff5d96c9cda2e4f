#include "cfma/explorer.hpp"

#include <algorithm>
#include <cmath>

#include "cfma/error.hpp"
#include "cfma/parallel.hpp"

namespace cfma {

RegionTrace trace_region(const ChannelModel& model, const std::vector<CoefficientPair>& coeff_sets,
                         const std::vector<double>& gammas, const ExpectationMethod& method,
                         const TraceOptions& options) {
  if (!coeff_sets.empty() && gammas.empty()) {
    throw Error(ErrorCode::InvalidArgument, "gamma_grid", "region trace needs at least one gamma");
  }
  std::vector<Scaling> scalings;
  scalings.reserve(gammas.size());
  for (double g : gammas) scalings.push_back(Scaling::from_gamma(g));

  const ExpectationMethod resolved = resolve_method(model, method);
  const std::size_t n_gamma = gammas.size();
  std::vector<RatePair> pairs(coeff_sets.size() * n_gamma);
  parallel_for(pairs.size(), [&](std::size_t k) {
    pairs[k] = achievable_rate_pair(model, coeff_sets[k / n_gamma], scalings[k % n_gamma], resolved);
  });

  RegionTrace trace;
  trace.includes_sic_corners = options.include_sic_corners;
  trace.pentagon = capacity_pentagon(model, resolved);
  trace.max_std_error = std::max({trace.pentagon.C1_std_error, trace.pentagon.C2_std_error,
                                  trace.pentagon.Csum_std_error});

  auto add = [&](const RatePair& p, double gamma, const CoefficientPair& coeffs) {
    trace.max_std_error = std::max({trace.max_std_error, p.breakdown.first_std_error,
                                    p.breakdown.second_std_error});
    if (!p.valid && !options.keep_invalid) return;
    trace.points.push_back({p.R1, p.R2, gamma, coeffs.label(), p.valid});
  };
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    add(pairs[k], gammas[k % n_gamma], coeff_sets[k / n_gamma]);
  }
  if (options.include_sic_corners) {
    // SIC rates do not depend on gamma.
    const Scaling unit = Scaling::from_gamma(1.0);
    for (const CoefficientPair& sic : {CoefficientPair({1, 0}, {0, 1}), CoefficientPair({0, 1}, {1, 0})}) {
      add(achievable_rate_pair(model, sic, unit, resolved), 1.0, sic);
    }
  }
  return trace;
}

std::string_view to_string(Region region) noexcept {
  switch (region) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

bool ClassificationCell::in_region(Region region) const noexcept {
  if (error) return false;
  switch (region) {
    case Region::I: return label == Region::I;
    case Region::II: return label == Region::II || label == Region::III || label == Region::IV;
    case Region::III: return label == Region::III;
    case Region::IV: return label == Region::IV;
    case Region::Indeterminate: return label == Region::Indeterminate;
  }
  return false;
}

ClassificationCell classify_point(const ChannelModel& model, const GammaScan& scan,
                                  const ExpectationMethod& method, const ClassifyOptions& options) {
  const ExpectationMethod resolved = resolve_method(model, method);
  ClassificationCell cell;
  const ChannelMoments m = moments(model);
  cell.params = {{"mu1", m.mu1}, {"mu2", m.mu2}, {"var1", m.var1}, {"var2", m.var2}};

  const ScanResult scanned = gamma_range_scan(model, {1, 1}, scan, resolved);

  // Verdict of the exact condition at gamma0; NotAchievable when gamma0 is
  // undefined.
  Verdict at_gamma0 = Verdict::NotAchievable;
  if (options.test_gamma0) {
    try {
      const Gamma0Result g0 = condition_gamma0(model, resolved);
      cell.gamma0 = g0.gamma0;
      cell.gamma0_sufficient = g0.condition;
      at_gamma0 = verdict_of(condition_iff(model, g0.gamma0, resolved).value);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroMean) throw;
    }
  }

  cell.achievable_gamma0 = at_gamma0 == Verdict::Achievable;
  cell.achievable_optimal = scanned.verdict == Verdict::Achievable || cell.achievable_gamma0;

  if (cell.achievable_optimal) {
    if (!options.test_gamma0) {
      cell.label = Region::II;
    } else if (at_gamma0 == Verdict::Indeterminate) {
      cell.label = Region::Indeterminate;
    } else {
      cell.label = cell.achievable_gamma0 ? Region::III : Region::IV;
    }
  } else if (scanned.verdict == Verdict::NotAchievable && at_gamma0 == Verdict::NotAchievable) {
    cell.label = Region::I;
  } else {
    cell.label = Region::Indeterminate;
  }
  return cell;
}

ChannelModel ModelTemplate::instantiate(const std::map<std::string, double>& params) const {
  ModelTemplate t = *this;
  for (const auto& [name, v] : params) {
    if (name == "mu") {
      t.mu1 = t.mu2 = v;
    } else if (name == "sigma") {
      t.var1 = t.var2 = v * v;
    } else if (name == "var") {
      t.var1 = t.var2 = v;
    } else if (name == "mu1") {
      t.mu1 = v;
    } else if (name == "mu2") {
      t.mu2 = v;
    } else if (name == "sigma1") {
      t.var1 = v * v;
    } else if (name == "sigma2") {
      t.var2 = v * v;
    } else if (name == "var1") {
      t.var1 = v;
    } else if (name == "var2") {
      t.var2 = v;
    } else if (name == "power") {
      t.power = v;
    } else {
      throw Error(ErrorCode::InvalidArgument, name, "unknown sweep parameter '" + name + "'");
    }
  }
  return ChannelModel(GainDistribution::gaussian(t.mu1, t.var1),
                      GainDistribution::gaussian(t.mu2, t.var2), t.power);
}

ParamAxis ParamAxis::linspace(std::string name, double lo, double hi, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, name, "axis needs at least one value");
  ParamAxis axis{std::move(name), {}};
  axis.values.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) axis.values[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  if (n > 1) axis.values.back() = hi;
  return axis;
}

std::vector<ClassificationCell> sweep_classify(const std::vector<ParamAxis>& axes,
                                               const ModelTemplate& model_template,
                                               const GammaScan& scan, const ExpectationMethod& method,
                                               const ClassifyOptions& options) {
  if (axes.empty()) throw Error(ErrorCode::InvalidArgument, "axes", "sweep needs at least one axis");
  std::size_t total = 1;
  for (const auto& axis : axes) {
    if (axis.values.empty()) {
      throw Error(ErrorCode::InvalidArgument, axis.name, "sweep axis has no values");
    }
    total *= axis.values.size();
  }
  const std::uint64_t master = [&]() -> std::uint64_t {
    if (const auto* mc = std::get_if<MonteCarlo>(&method)) return mc->seed;
    if (const auto* a = std::get_if<AutoMethod>(&method)) return a->seed;
    return 0;
  }();

  std::vector<ClassificationCell> cells(total);
  parallel_for(total, [&](std::size_t index) {
    std::map<std::string, double> params;
    std::size_t rest = index;
    for (std::size_t k = axes.size(); k-- > 0;) {
      const auto& axis = axes[k];
      params[axis.name] = axis.values[rest % axis.values.size()];
      rest /= axis.values.size();
    }
    ClassificationCell cell;
    try {
      const ChannelModel model = model_template.instantiate(params);
      cell = classify_point(model, scan, with_seed(method, derive_seed(master, index)), options);
    } catch (const std::exception& e) {
      cell = ClassificationCell{};
      cell.error = e.what();
    }
    cell.params = std::move(params);
    cells[index] = std::move(cell);
  });
  return cells;
}

std::vector<CoeffEntry> coeff_comparison(const ChannelModel& model, int a_max, const GammaScan& scan,
                                         const ExpectationMethod& method) {
  if (a_max < 1) throw Error(ErrorCode::InvalidArgument, "a_max", "a_max must be >= 1");
  const ExpectationMethod resolved = resolve_method(model, method);
  std::vector<CoeffEntry> out;
  for (int a1 = 1; a1 <= a_max; ++a1) {
    for (int a2 = 1; a2 <= a_max; ++a2) {
      CoeffEntry entry;
      entry.a = {a1, a2};
      if (a1 == 1) {
        entry.b = IntVec2{0, 1};
      } else if (a2 == 1) {
        entry.b = IntVec2{1, 0};
      }
      const ScanResult scanned = gamma_range_scan(model, entry.a, scan, resolved);
      entry.intervals = scanned.intervals;
      entry.total_measure = scanned.total_measure();
      out.push_back(std::move(entry));
    }
  }
  return out;
}

}  // namespace cfma
