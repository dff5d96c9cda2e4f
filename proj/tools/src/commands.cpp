#include "cfma/cli/commands.hpp"

#include <algorithm>

#include "cfma/cli/output.hpp"
#include "cfma/error.hpp"
#include "cfma/parallel.hpp"

namespace cfma::cli {

namespace {

using OJson = nlohmann::ordered_json;

std::string channel_line(const ChannelModel& model) {
  return "channel: gain1=" + model.gain1().to_string() + " gain2=" + model.gain2().to_string() +
         " power=" + format_number(model.power());
}

std::string method_name(const RunConfig& config) {
  return describe(resolve_method(config.model, config.method));
}

CsvWriter csv_preamble(const RunConfig& config) {
  CsvWriter csv(config.command);
  csv.comment(channel_line(config.model));
  csv.comment("method: " + method_name(config));
  return csv;
}

OJson json_preamble(const RunConfig& config) {
  OJson doc;
  doc["format"] = "cfma-" + config.command;
  doc["version"] = kFormatVersion;
  doc["generator"] = "cfma " + std::string(kToolVersion);
  doc["channel"] = {{"gain1", config.model.gain1().to_string()},
                    {"gain2", config.model.gain2().to_string()},
                    {"power", config.model.power()}};
  doc["method"] = method_name(config);
  return doc;
}

std::string dump(const OJson& doc) { return doc.dump(2) + "\n"; }

CommandResult done(std::string text) {
  CommandResult result;
  result.text = std::move(text);
  return result;
}

OJson estimate_json(const ExpectationEstimate& e) { return {{"value", e.value}, {"std_error", e.std_error}}; }

OJson interval_json(const GammaInterval& iv) {
  return {{"lo", iv.lo}, {"hi", iv.hi}, {"source", to_string(iv.provenance)}};
}

CoefficientPair pair_of(const CoeffRequest& c) { return CoefficientPair(c.a, c.b); }

// ---------------------------------------------------------------- rates

CommandResult run_rates(const RunConfig& config, const RatesSpec& spec) {
  struct Row {
    std::string coeffs;
    ScalingRequest scaling;
    RatePair pair;
  };
  std::vector<Row> rows;
  for (const auto& c : spec.coeffs) {
    const CoefficientPair coeffs = pair_of(c);
    for (const auto& s : spec.scalings) {
      const Scaling scaling = s.from_gamma ? Scaling::from_gamma(s.beta1) : Scaling::from_betas(s.beta1, s.beta2);
      rows.push_back({coeffs.label(), s, achievable_rate_pair(config.model, coeffs, scaling, config.method)});
    }
  }

  if (config.format == OutputFormat::Json) {
    OJson doc = json_preamble(config);
    OJson out = OJson::array();
    for (const auto& r : rows) {
      const auto& b = r.pair.breakdown;
      out.push_back({{"coeffs", r.coeffs},
                     {"gamma", r.scaling.gamma()},
                     {"beta1", r.scaling.beta1},
                     {"beta2", r.scaling.beta2},
                     {"R1", r.pair.R1},
                     {"R2", r.pair.R2},
                     {"valid", r.pair.valid},
                     {"r1_a", b.first[0]},
                     {"r2_a", b.first[1]},
                     {"r1_b_given_a", b.second[0]},
                     {"r2_b_given_a", b.second[1]},
                     {"first_std_error", b.first_std_error},
                     {"second_std_error", b.second_std_error}});
    }
    doc["rows"] = std::move(out);
    return done(dump(doc));
  }
  CsvWriter csv = csv_preamble(config);
  csv.header({"coeffs", "gamma", "beta1", "beta2", "R1", "R2", "valid", "r1_a", "r2_a", "r1_b_given_a",
              "r2_b_given_a", "first_std_error", "second_std_error"});
  for (const auto& r : rows) {
    const auto& b = r.pair.breakdown;
    csv.cell(r.coeffs).cell(r.scaling.gamma()).cell(r.scaling.beta1).cell(r.scaling.beta2);
    csv.cell(r.pair.R1).cell(r.pair.R2).cell(r.pair.valid);
    csv.cell(b.first[0]).cell(b.first[1]).cell(b.second[0]).cell(b.second[1]);
    csv.cell(b.first_std_error).cell(b.second_std_error);
    csv.end_row();
  }
  return done(csv.str());
}

// ---------------------------------------------------------------- region

CommandResult run_region(const RunConfig& config, const RegionSpec& spec) {
  std::vector<CoefficientPair> coeffs;
  for (const auto& c : spec.coeffs) coeffs.push_back(pair_of(c));
  const RegionTrace trace = trace_region(config.model, coeffs, spec.gammas, config.method, spec.options);
  const Pentagon& p = trace.pentagon;

  if (config.format == OutputFormat::Json) {
    OJson doc = json_preamble(config);
    doc["pentagon"] = {{"C1", p.C1}, {"C2", p.C2}, {"Csum", p.Csum}, {"C1_std_error", p.C1_std_error},
                       {"C2_std_error", p.C2_std_error}, {"Csum_std_error", p.Csum_std_error}};
    doc["sic_corners"] = trace.includes_sic_corners;
    doc["time_sharing_applied"] = false;
    doc["max_std_error"] = trace.max_std_error;
    OJson points = OJson::array();
    for (const auto& pt : trace.points) {
      points.push_back({{"R1", pt.R1}, {"R2", pt.R2}, {"gamma", pt.gamma}, {"coeffs", pt.coeffs}, {"valid", pt.valid}});
    }
    doc["points"] = std::move(points);
    return done(dump(doc));
  }
  CsvWriter csv = csv_preamble(config);
  csv.comment("pentagon: C1=" + format_number(p.C1) + " C2=" + format_number(p.C2) + " Csum=" + format_number(p.Csum));
  csv.comment(std::string("sic_corners: ") + (trace.includes_sic_corners ? "true" : "false") +
              " time_sharing_applied: false max_std_error: " + format_number(trace.max_std_error));
  csv.header({"R1", "R2", "gamma", "coeffs", "valid"});
  for (const auto& pt : trace.points) {
    csv.cell(pt.R1).cell(pt.R2).cell(pt.gamma).cell(pt.coeffs).cell(pt.valid);
    csv.end_row();
  }
  return done(csv.str());
}

// ---------------------------------------------------------------- check

bool iid_applicable(const ChannelModel& model) {
  return !model.has_empirical() && model.gain1() == model.gain2() && model.gain1().mean() != 0.0;
}

CommandResult run_check(const RunConfig& config, const CheckSpec& spec) {
  const ChannelModel& model = config.model;
  const ExpectationMethod method = resolve_method(model, config.method);
  const bool base_a = spec.a == IntVec2{1, 1};
  const ChannelMoments m = moments(model);
  auto wanted = [&](std::string_view name) { return spec.conditions.empty() || spec.conditions.contains(name); };
  auto requested = [&](std::string_view name) { return spec.conditions.contains(name); };

  Verdict verdict;
  std::vector<GammaInterval> intervals;
  ExpectationEstimate capacity;
  if (base_a) {
    const SumCapacityReport report = sum_capacity_report(model, spec.scan, method);
    verdict = report.verdict;
    intervals = report.intervals;
    capacity.value = report.capacity;
    capacity.std_error = report.capacity_std_error;
  } else {
    const ScanResult scanned = gamma_range_scan(model, spec.a, spec.scan, method);
    verdict = scanned.verdict;
    intervals = scanned.intervals;
    capacity = ergodic_capacity(model, method);
  }

  std::optional<std::vector<GammaInterval>> thm3;
  if (base_a && wanted("thm3")) thm3 = thm3_intervals(model, method);
  std::optional<Gamma0Result> gamma0;
  if (base_a && (requested("gamma0") || (wanted("gamma0") && m.mu1 != 0.0 && m.mu2 != 0.0))) {
    gamma0 = condition_gamma0(model, method);
  }
  std::optional<ConditionValue> iid;
  if (base_a && (requested("iid_gaussian") || (wanted("iid_gaussian") && iid_applicable(model)))) {
    iid = condition_iid_gaussian(model, method);
  }

  // Curves of the Fig. 2 right plot.
  const bool want_iff = wanted("iff");
  const bool want_sufficient = base_a && wanted("sufficient");
  std::vector<ConditionValue> iff_curve(want_iff ? spec.curve_gammas.size() : 0);
  std::vector<ConditionValue> suff_curve(want_sufficient ? spec.curve_gammas.size() : 0);
  parallel_for(spec.curve_gammas.size(), [&](std::size_t i) {
    const double g = spec.curve_gammas[i];
    if (want_iff) iff_curve[i] = condition_general_a(model, spec.a, g, method);
    if (want_sufficient) suff_curve[i] = condition_sufficient(model, g, method);
  });

  if (config.format == OutputFormat::Json) {
    OJson doc = json_preamble(config);
    doc["a"] = spec.a;
    doc["verdict"] = to_string(verdict);
    doc["achievable"] = verdict == Verdict::Achievable;
    doc["capacity"] = estimate_json(capacity);
    OJson ivs = OJson::array();
    for (const auto& iv : intervals) ivs.push_back(interval_json(iv));
    doc["intervals"] = std::move(ivs);
    OJson conditions = OJson::object();
    if (thm3) {
      OJson t = OJson::array();
      for (const auto& iv : *thm3) t.push_back(interval_json(iv));
      conditions["thm3"] = std::move(t);
    }
    if (gamma0) {
      conditions["gamma0"] = {{"gamma0", gamma0->gamma0},
                              {"value", gamma0->condition.value.value},
                              {"std_error", gamma0->condition.value.std_error},
                              {"achievable", gamma0->achievable}};
    }
    if (iid) {
      conditions["iid_gaussian"] = {{"value", iid->value.value},
                                    {"std_error", iid->value.std_error},
                                    {"verdict", to_string(verdict_of(iid->value))}};
    }
    doc["conditions"] = std::move(conditions);
    OJson columns = OJson::array({"gamma"});
    if (want_iff) columns.insert(columns.end(), {base_a ? "iff" : "general_a", "iff_std_error"});
    if (want_sufficient) columns.insert(columns.end(), {"sufficient", "sufficient_std_error"});
    OJson rows = OJson::array();
    for (std::size_t i = 0; i < spec.curve_gammas.size(); ++i) {
      OJson row = OJson::array({spec.curve_gammas[i]});
      if (want_iff) row.insert(row.end(), {iff_curve[i].value.value, iff_curve[i].value.std_error});
      if (want_sufficient) row.insert(row.end(), {suff_curve[i].value.value, suff_curve[i].value.std_error});
      rows.push_back(std::move(row));
    }
    doc["curves"] = {{"columns", std::move(columns)}, {"rows", std::move(rows)}};
    return done(dump(doc));
  }

  CsvWriter csv = csv_preamble(config);
  csv.comment("a: (" + std::to_string(spec.a[0]) + "," + std::to_string(spec.a[1]) + ")");
  csv.comment("verdict: " + std::string(to_string(verdict)));
  csv.comment("capacity: " + format_number(capacity.value) + " std_error=" + format_number(capacity.std_error));
  for (const auto& iv : intervals) {
    csv.comment("interval: lo=" + format_number(iv.lo) + " hi=" + format_number(iv.hi) +
                " source=" + std::string(to_string(iv.provenance)));
  }
  if (gamma0) {
    csv.comment("gamma0: gamma0=" + format_number(gamma0->gamma0) + " value=" +
                format_number(gamma0->condition.value.value) + " achievable=" + (gamma0->achievable ? "true" : "false"));
  }
  if (iid) csv.comment("iid_gaussian: value=" + format_number(iid->value.value));
  std::vector<std::string> columns{"gamma"};
  if (want_iff) columns.insert(columns.end(), {base_a ? "iff" : "general_a", "iff_std_error"});
  if (want_sufficient) columns.insert(columns.end(), {"sufficient", "sufficient_std_error"});
  csv.header(columns);
  for (std::size_t i = 0; i < spec.curve_gammas.size(); ++i) {
    csv.cell(spec.curve_gammas[i]);
    if (want_iff) csv.cell(iff_curve[i].value.value).cell(iff_curve[i].value.std_error);
    if (want_sufficient) csv.cell(suff_curve[i].value.value).cell(suff_curve[i].value.std_error);
    csv.end_row();
  }
  return done(csv.str());
}

// ---------------------------------------------------------------- sweep

CommandResult run_sweep(const RunConfig& config, const SweepSpec& spec) {
  const auto cells = sweep_classify(spec.axes, spec.model_template, spec.scan, config.method, spec.options);
  CommandResult result;
  std::size_t failed = 0;
  for (const auto& c : cells) failed += c.error.has_value();
  if (failed == cells.size()) {
    throw Error(ErrorCode::InvalidArgument, "sweep", "every sweep cell failed; first error: " + *cells.front().error);
  }
  if (failed > 0) result.warnings.push_back(std::to_string(failed) + " of " + std::to_string(cells.size()) + " sweep cells failed");

  auto label_of = [](const ClassificationCell& c) { return c.error ? std::string("error") : std::string(to_string(c.label)); };

  if (config.format == OutputFormat::Json) {
    OJson doc = json_preamble(config);
    doc["method"] = describe(config.method);
    OJson axes = OJson::array();
    for (const auto& a : spec.axes) axes.push_back({{"name", a.name}, {"values", a.values}});
    doc["axes"] = std::move(axes);
    OJson out = OJson::array();
    for (const auto& c : cells) {
      OJson cell;
      OJson params = OJson::object();
      for (const auto& a : spec.axes) params[a.name] = c.params.at(a.name);
      cell["params"] = std::move(params);
      cell["label"] = label_of(c);
      cell["region_ii"] = c.in_region(Region::II);
      cell["region_iii"] = c.in_region(Region::III);
      cell["gamma0"] = c.gamma0 ? OJson(*c.gamma0) : OJson();
      cell["gamma0_condition"] = c.gamma0_sufficient ? OJson(c.gamma0_sufficient->value.value) : OJson();
      cell["error"] = c.error ? OJson(*c.error) : OJson();
      out.push_back(std::move(cell));
    }
    doc["cells"] = std::move(out);
    result.text = dump(doc);
    return result;
  }
  CsvWriter csv(config.command);
  csv.comment(channel_line(config.model) + " (sweep template)");
  csv.comment("method: " + describe(config.method));
  csv.comment(std::string("test_gamma0: ") + (spec.options.test_gamma0 ? "true" : "false"));
  std::vector<std::string> columns;
  for (const auto& a : spec.axes) columns.push_back(a.name);
  columns.insert(columns.end(), {"label", "region_ii", "region_iii", "gamma0", "gamma0_condition", "error"});
  csv.header(columns);
  for (const auto& c : cells) {
    for (const auto& a : spec.axes) csv.cell(c.params.at(a.name));
    csv.cell(label_of(c)).cell(c.in_region(Region::II)).cell(c.in_region(Region::III));
    c.gamma0 ? csv.cell(*c.gamma0) : csv.empty();
    c.gamma0_sufficient ? csv.cell(c.gamma0_sufficient->value.value) : csv.empty();
    c.error ? csv.cell(*c.error) : csv.empty();
    csv.end_row();
  }
  result.text = csv.str();
  return result;
}

// ---------------------------------------------------------------- coeffs

CommandResult run_coeffs(const RunConfig& config, const CoeffsSpec& spec) {
  auto entries = coeff_comparison(config.model, spec.a_max, spec.scan, config.method);
  // Ranked by achieving-gamma measure; ties keep enumeration order.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const CoeffEntry& x, const CoeffEntry& y) { return x.total_measure > y.total_measure; });

  if (config.format == OutputFormat::Json) {
    OJson doc = json_preamble(config);
    doc["a_max"] = spec.a_max;
    OJson out = OJson::array();
    for (const auto& e : entries) {
      OJson ivs = OJson::array();
      for (const auto& iv : e.intervals) ivs.push_back(interval_json(iv));
      out.push_back({{"a", e.a}, {"b", e.b ? OJson(*e.b) : OJson()}, {"intervals", std::move(ivs)},
                     {"total_measure", e.total_measure}});
    }
    doc["entries"] = std::move(out);
    return done(dump(doc));
  }
  CsvWriter csv = csv_preamble(config);
  csv.comment("a_max: " + std::to_string(spec.a_max) + " (rows ranked by total_measure; one row per interval)");
  csv.header({"a1", "a2", "interval_lo", "interval_hi", "total_measure"});
  for (const auto& e : entries) {
    if (e.intervals.empty()) {
      csv.cell(e.a[0]).cell(e.a[1]).empty().empty().cell(e.total_measure);
      csv.end_row();
    }
    for (const auto& iv : e.intervals) {
      csv.cell(e.a[0]).cell(e.a[1]).cell(iv.lo).cell(iv.hi).cell(e.total_measure);
      csv.end_row();
    }
  }
  return done(csv.str());
}

}  // namespace

CommandResult execute(const RunConfig& config) {
  return std::visit(
      [&](const auto& spec) -> CommandResult {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, RatesSpec>) return run_rates(config, spec);
        if constexpr (std::is_same_v<T, RegionSpec>) return run_region(config, spec);
        if constexpr (std::is_same_v<T, CheckSpec>) return run_check(config, spec);
        if constexpr (std::is_same_v<T, SweepSpec>) return run_sweep(config, spec);
        if constexpr (std::is_same_v<T, CoeffsSpec>) return run_coeffs(config, spec);
      },
      config.spec);
}

}  // namespace cfma::cli
