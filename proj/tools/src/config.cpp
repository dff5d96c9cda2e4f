#include "cfma/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cfma/error.hpp"

namespace cfma::cli {

ConfigError::ConfigError(std::string field, const std::string& message, int line, int column)
    : std::runtime_error(message), field_(std::move(field)), line_(line), column_(column) {}

namespace {

// Read-only cursor into the document that knows its dotted path.
class Node {
 public:
  Node(const Json& json, std::string path) : json_(&json), path_(std::move(path)) {}

  const Json& json() const { return *json_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& message) const { throw ConfigError(path_, message); }

  bool has(std::string_view key) const { return json_->is_object() && json_->contains(key); }

  Node at(std::string_view key) const {
    const std::string child = path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    if (!has(key)) throw ConfigError(child, "required field is missing");
    return Node(json_->at(std::string(key)), child);
  }

  void expect_object(std::initializer_list<std::string_view> allowed) const {
    if (!json_->is_object()) fail("expected an object");
    for (const auto& [key, value] : json_->items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ConfigError(path_.empty() ? key : path_ + "." + key, "unknown field");
      }
    }
  }

  std::vector<Node> array(std::size_t min_size = 0) const {
    if (!json_->is_array()) fail("expected an array");
    if (json_->size() < min_size) fail("expected at least " + std::to_string(min_size) + " element(s)");
    std::vector<Node> out;
    for (std::size_t i = 0; i < json_->size(); ++i) out.emplace_back((*json_)[i], path_ + "[" + std::to_string(i) + "]");
    return out;
  }

  double number() const {
    if (!json_->is_number()) fail("expected a number");
    const double v = json_->get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) const {
    if (!json_->is_number_integer()) fail("expected an integer");
    if (json_->is_number_unsigned() && json_->get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) {
      fail("must be <= " + std::to_string(hi));
    }
    const auto v = json_->get<std::int64_t>();
    if (v < lo || v > hi) fail("must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  std::uint64_t u64() const {
    if (json_->is_number_unsigned()) return json_->get<std::uint64_t>();
    if (json_->is_number_integer()) fail("must be a nonnegative integer");
    fail("expected an unsigned 64-bit integer");
  }

  bool boolean() const {
    if (!json_->is_boolean()) fail("expected true or false");
    return json_->get<bool>();
  }

  std::string string() const {
    if (!json_->is_string()) fail("expected a string");
    return json_->get<std::string>();
  }

 private:
  const Json* json_;
  std::string path_;
};

IntVec2 int_pair(const Node& node) {
  const auto items = node.array();
  if (items.size() != 2) node.fail("expected two integers");
  return {static_cast<int>(items[0].integer(-1000, 1000)), static_cast<int>(items[1].integer(-1000, 1000))};
}

std::vector<CoeffRequest> parse_coeffs(const Node& node) {
  std::vector<CoeffRequest> out;
  for (const Node& item : node.array()) {
    item.expect_object({"a", "b"});
    CoeffRequest c{int_pair(item.at("a")), int_pair(item.at("b"))};
    try {
      CoefficientPair check(c.a, c.b);
    } catch (const Error& e) {
      item.fail(e.what());
    }
    out.push_back(c);
  }
  return out;
}

GammaGrid::Spacing parse_spacing(const Node& parent) {
  if (!parent.has("spacing")) return GammaGrid::Spacing::Linear;
  const Node node = parent.at("spacing");
  const std::string s = node.string();
  if (s == "linear") return GammaGrid::Spacing::Linear;
  if (s == "log") return GammaGrid::Spacing::Log;
  node.fail("expected \"linear\" or \"log\"");
}

// Either {"values": [...]} or {"lo", "hi", "n", "spacing"}.
std::vector<double> parse_grid(const Node& node) {
  node.expect_object({"values", "lo", "hi", "n", "spacing"});
  if (node.has("values")) {
    if (node.has("lo") || node.has("hi") || node.has("n")) node.fail("give either values or lo/hi/n, not both");
    std::vector<double> out;
    for (const Node& v : node.at("values").array(1)) out.push_back(v.number());
    return out;
  }
  GammaGrid grid;
  grid.lo = node.at("lo").number();
  grid.hi = node.at("hi").number();
  grid.n_points = static_cast<int>(node.at("n").integer(2, 1'000'000));
  grid.spacing = parse_spacing(node);
  if (!(grid.lo < grid.hi)) node.fail("lo must be < hi");
  if (grid.spacing == GammaGrid::Spacing::Log && (grid.lo == 0.0 || grid.hi == 0.0 || (grid.lo < 0) != (grid.hi < 0))) {
    node.fail("log spacing needs lo and hi nonzero with the same sign");
  }
  return grid.points();
}

GammaScan parse_scan(const Node& parent) {
  if (!parent.has("scan")) return default_gamma_scan();
  const Node node = parent.at("scan");
  if (node.json().is_string()) {
    if (node.string() != "default") node.fail("expected \"default\" or a list of grids");
    return default_gamma_scan();
  }
  GammaScan scan;
  for (const Node& item : node.array(1)) {
    item.expect_object({"lo", "hi", "n", "spacing"});
    GammaGrid grid;
    grid.lo = item.at("lo").number();
    grid.hi = item.at("hi").number();
    grid.n_points = item.has("n") ? static_cast<int>(item.at("n").integer(16, 1'000'000)) : 512;
    grid.spacing = item.has("spacing") ? parse_spacing(item) : GammaGrid::Spacing::Log;
    if (grid.lo == 0.0 || grid.hi == 0.0 || (grid.lo < 0) != (grid.hi < 0) || !(grid.lo < grid.hi)) {
      item.fail("scan grids need lo < hi, both nonzero with the same sign");
    }
    scan.push_back(grid);
  }
  return scan;
}

ChannelModel parse_channel(const Node& node) {
  node.expect_object({"gain1", "gain2", "power"});
  auto gain = [&](std::string_view key) {
    const Node g = node.at(key);
    try {
      return GainDistribution::parse(g.string());
    } catch (const Error& e) {
      g.fail(e.what());
    }
  };
  GainDistribution g1 = gain("gain1");
  GainDistribution g2 = gain("gain2");
  double power = 1.0;
  if (node.has("power")) {
    power = node.at("power").number();
    if (power < 0.0) node.at("power").fail("power must be >= 0");
  }
  return ChannelModel(std::move(g1), std::move(g2), power);
}

ExpectationMethod parse_method(const Node& node, const ChannelModel& model) {
  node.expect_object({"kind", "seed", "samples", "nodes"});
  const std::string kind = node.has("kind") ? node.at("kind").string() : "auto";
  const std::optional<std::uint64_t> seed =
      node.has("seed") ? std::optional<std::uint64_t>(node.at("seed").u64()) : std::nullopt;
  const std::int64_t samples = node.has("samples") ? node.at("samples").integer(2, std::int64_t{1} << 40) : 1'000'000;
  const int nodes = node.has("nodes") ? static_cast<int>(node.at("nodes").integer(1, 1024)) : 64;

  if (kind == "mc") {
    // No wall-clock default: a run must be reproducible from its config.
    if (!seed) throw ConfigError(node.path().empty() ? "seed" : node.path() + ".seed", "seed is required when method is mc");
    return MonteCarlo{*seed, samples};
  }
  if (kind == "quadrature") {
    if (model.has_empirical()) node.at("kind").fail("quadrature needs parametric gains; use mc for empirical gains");
    return GaussHermite{nodes};
  }
  if (kind == "auto") {
    if (model.has_empirical() && !seed) {
      throw ConfigError(node.path().empty() ? "seed" : node.path() + ".seed",
                        "seed is required: auto resolves to mc for empirical gains");
    }
    return AutoMethod{seed.value_or(0), samples, nodes};
  }
  node.at("kind").fail("expected \"mc\", \"quadrature\" or \"auto\"");
}

RatesSpec parse_rates(const Node& node) {
  node.expect_object({"coeffs", "gamma", "betas", "gamma_grid"});
  RatesSpec spec;
  spec.coeffs = node.has("coeffs") ? parse_coeffs(node.at("coeffs")) : std::vector<CoeffRequest>{CoeffRequest{}};
  if (spec.coeffs.empty()) node.at("coeffs").fail("expected at least one coefficient pair");
  const int given = node.has("gamma") + node.has("betas") + node.has("gamma_grid");
  if (given > 1) node.fail("give only one of gamma, betas, gamma_grid");
  if (node.has("betas")) {
    const auto betas = node.at("betas").array();
    if (betas.size() != 2) node.at("betas").fail("expected [beta1, beta2]");
    spec.scalings.push_back({betas[0].number(), betas[1].number(), false});
  } else if (node.has("gamma_grid")) {
    for (double g : parse_grid(node.at("gamma_grid"))) spec.scalings.push_back({g, 1.0, true});
  } else {
    spec.scalings.push_back({node.has("gamma") ? node.at("gamma").number() : 1.0, 1.0, true});
  }
  return spec;
}

RegionSpec parse_region(const Node& node) {
  node.expect_object({"coeffs", "gamma_grid", "sic_corners", "keep_invalid"});
  RegionSpec spec;
  spec.coeffs = node.has("coeffs") ? parse_coeffs(node.at("coeffs")) : std::vector<CoeffRequest>{CoeffRequest{}};
  if (node.has("gamma_grid")) {
    spec.gammas = parse_grid(node.at("gamma_grid"));
  } else {
    spec.gammas = GammaGrid{0.1, 10.0, 201, GammaGrid::Spacing::Log}.points();
  }
  if (node.has("sic_corners")) spec.options.include_sic_corners = node.at("sic_corners").boolean();
  if (node.has("keep_invalid")) spec.options.keep_invalid = node.at("keep_invalid").boolean();
  if (spec.coeffs.empty() && !spec.options.include_sic_corners) {
    node.at("coeffs").fail("no coefficient pairs and sic_corners is false: nothing to trace");
  }
  return spec;
}

CheckSpec parse_check(const Node& node) {
  node.expect_object({"a", "scan", "curve_grid", "conditions"});
  CheckSpec spec;
  if (node.has("a")) {
    spec.a = int_pair(node.at("a"));
    if (spec.a[0] == 0 || spec.a[1] == 0) node.at("a").fail("both coefficients must be nonzero");
  }
  spec.scan = parse_scan(node);
  spec.curve_gammas = node.has("curve_grid") ? parse_grid(node.at("curve_grid"))
                                             : GammaGrid{0.1, 10.0, 241, GammaGrid::Spacing::Log}.points();
  if (node.has("conditions")) {
    static constexpr std::string_view known[] = {"iff", "sufficient", "thm3", "gamma0", "iid_gaussian"};
    for (const Node& c : node.at("conditions").array(1)) {
      const std::string name = c.string();
      if (std::find(std::begin(known), std::end(known), name) == std::end(known)) {
        c.fail("unknown condition (iff, sufficient, thm3, gamma0, iid_gaussian)");
      }
      spec.conditions.insert(name);
    }
    if (spec.a != IntVec2{1, 1} && (spec.conditions.size() > 1 || !spec.conditions.contains("iff"))) {
      node.at("conditions").fail("only the iff condition is defined for a != (1,1)");
    }
  }
  return spec;
}

SweepSpec parse_sweep(const Node& node, const Node& channel_node, const ChannelModel& model) {
  node.expect_object({"axes", "scan", "test_gamma0"});
  SweepSpec spec;
  if (model.gain1().is_empirical()) channel_node.at("gain1").fail("sweeps need Gaussian or degenerate gains");
  if (model.gain2().is_empirical()) channel_node.at("gain2").fail("sweeps need Gaussian or degenerate gains");
  spec.model_template = {model.gain1().mean(), model.gain2().mean(), model.gain1().variance(),
                         model.gain2().variance(), model.power()};
  static constexpr std::string_view names[] = {"mu",     "sigma",  "var",  "mu1",  "mu2",
                                               "sigma1", "sigma2", "var1", "var2", "power"};
  for (const Node& item : node.at("axes").array(1)) {
    item.expect_object({"name", "values", "lo", "hi", "n"});
    const std::string name = item.at("name").string();
    if (std::find(std::begin(names), std::end(names), name) == std::end(names)) {
      item.at("name").fail("unknown axis (mu, sigma, var, mu1, mu2, sigma1, sigma2, var1, var2, power)");
    }
    for (const auto& seen : spec.axes) {
      if (seen.name == name) item.at("name").fail("duplicate axis '" + name + "'");
    }
    ParamAxis axis{name, {}};
    if (item.has("values")) {
      for (const Node& v : item.at("values").array(1)) axis.values.push_back(v.number());
    } else {
      axis = ParamAxis::linspace(name, item.at("lo").number(), item.at("hi").number(),
                                 static_cast<int>(item.at("n").integer(1, 100'000)));
    }
    spec.axes.push_back(std::move(axis));
  }
  spec.scan = parse_scan(node);
  if (node.has("test_gamma0")) spec.options.test_gamma0 = node.at("test_gamma0").boolean();
  return spec;
}

CoeffsSpec parse_coeffs_block(const Node& node) {
  node.expect_object({"a_max", "scan"});
  CoeffsSpec spec;
  if (node.has("a_max")) spec.a_max = static_cast<int>(node.at("a_max").integer(1, 64));
  spec.scan = parse_scan(node);
  return spec;
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

Json parse_document(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string what = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at line x, column y: " prefix.
    if (const auto colon = what.find(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw ConfigError(source, what, line, column);
  }
}

Json load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str(), path);
}

void apply_override(Json& doc, std::string_view dotted, std::string_view value) {
  if (dotted.empty() || dotted.front() == '.' || dotted.back() == '.' || dotted.find("..") != std::string_view::npos) {
    throw ConfigError(std::string(dotted), "malformed override path");
  }
  if (!doc.is_object()) doc = Json::object();
  Json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key(dotted.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
    if (dot == std::string_view::npos) {
      Json parsed = Json::parse(value.begin(), value.end(), nullptr, false);
      (*node)[key] = parsed.is_discarded() ? Json(std::string(value)) : std::move(parsed);
      return;
    }
    Json& child = (*node)[key];
    if (child.is_null()) child = Json::object();
    if (!child.is_object()) {
      throw ConfigError(std::string(dotted.substr(0, dot)), "cannot override inside a non-object value");
    }
    node = &child;
    start = dot + 1;
  }
}

RunConfig build_config(const std::string& command, const Json& doc) {
  if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands)) {
    throw ConfigError("command", "unknown command '" + command + "'");
  }
  const Node root(doc, "");
  root.expect_object({"channel", "method", "output", "description", "rates", "region", "check", "sweep", "coeffs"});

  std::vector<std::string> blocks;
  for (auto name : kCommands) {
    if (root.has(name)) blocks.emplace_back(name);
  }
  if (blocks.size() > 1) {
    throw ConfigError(blocks[1], "exactly one command block may be present (found '" + blocks[0] + "' and '" +
                                     blocks[1] + "')");
  }
  if (blocks.size() == 1 && blocks[0] != command) {
    throw ConfigError(blocks[0], "config has a '" + blocks[0] + "' block but the command is '" + command + "'");
  }

  RunConfig config;
  config.command = command;
  const Node channel = root.at("channel");
  config.model = parse_channel(channel);
  const Json empty = Json::object();
  config.method = parse_method(root.has("method") ? root.at("method") : Node(empty, "method"), config.model);

  config.format = command == "check" ? OutputFormat::Json : OutputFormat::Csv;
  if (root.has("output")) {
    const Node output = root.at("output");
    output.expect_object({"path", "format"});
    if (output.has("path")) config.out_path = output.at("path").string();
    if (output.has("format")) {
      const std::string f = output.at("format").string();
      if (f == "csv") {
        config.format = OutputFormat::Csv;
      } else if (f == "json") {
        config.format = OutputFormat::Json;
      } else {
        output.at("format").fail("expected \"csv\" or \"json\"");
      }
    }
  }

  const Node block = root.has(command) ? root.at(command) : Node(empty, command);
  if (command == "rates") {
    config.spec = parse_rates(block);
  } else if (command == "region") {
    config.spec = parse_region(block);
  } else if (command == "check") {
    config.spec = parse_check(block);
  } else if (command == "sweep") {
    config.spec = parse_sweep(block, channel, config.model);
  } else {
    config.spec = parse_coeffs_block(block);
  }
  return config;
}

}  // namespace cfma::cli
