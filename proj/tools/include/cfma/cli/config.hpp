#pragma once

// Run configuration for the cfma tool: one JSON document, overridable leaf by
// leaf with dotted paths (--channel.power=2), validated into typed specs.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cfma/capacity_conditions.hpp"
#include "cfma/cfma_rates.hpp"
#include "cfma/channel_stats.hpp"
#include "cfma/explorer.hpp"
#include "json.hpp"

namespace cfma::cli {

using Json = nlohmann::json;

// Exit status 2. `field` is the dotted path of the offending value; line and
// column (1-based) are set for syntax errors in the config file.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message, int line = 0, int column = 0);

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string field_;
  int line_;
  int column_;
};

enum class OutputFormat { Csv, Json };

inline constexpr std::string_view kCommands[] = {"rates", "region", "check", "sweep", "coeffs"};

// A scaling request: gamma alone (beta2 = 1) or an explicit beta pair.
// Validity (nonzero) is checked by the engine, so a zero surfaces as a
// numeric error naming the parameter.
struct ScalingRequest {
  double beta1 = 1.0;
  double beta2 = 1.0;
  bool from_gamma = true;

  double gamma() const noexcept { return beta1 / beta2; }
};

struct CoeffRequest {
  IntVec2 a{1, 1};
  IntVec2 b{0, 1};
};

struct RatesSpec {
  std::vector<CoeffRequest> coeffs;
  std::vector<ScalingRequest> scalings;
};

struct RegionSpec {
  std::vector<CoeffRequest> coeffs;
  std::vector<double> gammas;
  TraceOptions options;
};

struct CheckSpec {
  IntVec2 a{1, 1};
  GammaScan scan;
  std::vector<double> curve_gammas;
  std::set<std::string, std::less<>> conditions;  // empty = all applicable
};

struct SweepSpec {
  std::vector<ParamAxis> axes;
  ModelTemplate model_template;
  GammaScan scan;
  ClassifyOptions options;
};

struct CoeffsSpec {
  int a_max = 2;
  GammaScan scan;
};

using CommandSpec = std::variant<RatesSpec, RegionSpec, CheckSpec, SweepSpec, CoeffsSpec>;

struct RunConfig {
  std::string command;
  ChannelModel model{GainDistribution::degenerate(0.0), GainDistribution::degenerate(0.0)};
  ExpectationMethod method = AutoMethod{};
  std::string out_path;  // empty: stdout
  OutputFormat format = OutputFormat::Csv;
  CommandSpec spec;
};

// Parses a config file; syntax errors carry line and column.
Json load_document(const std::string& path);
Json parse_document(std::string_view text, const std::string& source = "<config>");

// Sets the leaf at `dotted` (e.g. "channel.power") to `value`, read as JSON
// when it parses (numbers, booleans, arrays) and as a string otherwise.
// Missing intermediate objects are created.
void apply_override(Json& doc, std::string_view dotted, std::string_view value);

// Validates `doc` for `command`. Exactly one command block may be present; an
// absent block for `command` means all defaults.
RunConfig build_config(const std::string& command, const Json& doc);

}  // namespace cfma::cli
