#include "cfma/cli/run.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "cfma/cli/commands.hpp"
#include "cfma/cli/config.hpp"
#include "cfma/cli/output.hpp"
#include "cfma/error.hpp"
#include "cfma/parallel.hpp"

namespace cfma::cli {

namespace {

constexpr const char* kFooter = R"(Config: one JSON document (see docs/cli.md). Any leaf can be overridden with a
dotted path, e.g. --channel.power=2 or --check.a=[1,2]; global flags win over
both. CFMA_THREADS caps the worker count.
Exit codes: 0 ok, 2 config error, 3 numeric error.)";

// CFMA_THREADS caps the worker count; unset means hardware concurrency.
void apply_thread_cap() {
  const char* env = std::getenv("CFMA_THREADS");
  if (!env || !*env) {
    set_max_workers(0);
    return;
  }
  const std::string_view text(env);
  unsigned n = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), n);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || n == 0) {
    throw ConfigError("CFMA_THREADS", "expected a positive integer, got '" + std::string(text) + "'");
  }
  set_max_workers(n);
}

// Dotted-path overrides left over by CLI11: --a.b=v or --a.b v.
void apply_overrides(Json& doc, const std::vector<std::string>& extras) {
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& token = extras[i];
    if (token.rfind("--", 0) != 0) throw ConfigError(token, "unexpected argument");
    const std::string body = token.substr(2);
    const std::size_t eq = body.find('=');
    const std::string key = body.substr(0, eq);
    if (key.find('.') == std::string::npos) throw ConfigError(token, "unknown option");
    if (eq != std::string::npos) {
      apply_override(doc, key, std::string_view(body).substr(eq + 1));
    } else if (i + 1 < extras.size() && extras[i + 1].rfind("--", 0) != 0) {
      apply_override(doc, key, extras[++i]);
    } else {
      throw ConfigError(key, "override needs a value");
    }
  }
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text) || !(file.flush())) {
    throw ConfigError("output.path", "cannot write '" + path + "'");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compute-forward multiple access (CFMA) analysis for the two-user Gaussian fast-fading MAC.", "cfma"};
  app.allow_extras();
  app.footer(kFooter);
  app.set_version_flag("--version", "cfma " + std::string(kToolVersion));

  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::string method;
  std::optional<std::int64_t> samples;
  std::optional<int> nodes;
  app.add_option("command", command, "rates | region | check | sweep | coeffs")
      ->required()
      ->check(CLI::IsMember({"rates", "region", "check", "sweep", "coeffs"}));
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "Monte Carlo seed (required for mc)");
  app.add_option("--method", method, "mc | quadrature | auto")->check(CLI::IsMember({"mc", "quadrature", "auto"}));
  app.add_option("--samples", samples, "Monte Carlo sample count");
  app.add_option("--nodes", nodes, "Gauss-Hermite nodes per dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) return app.exit(e, out, err);
    err << "cfma: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    apply_thread_cap();
    Json doc = config_path.empty() ? Json::object() : load_document(config_path);
    apply_overrides(doc, app.remaining());
    if (!out_path.empty()) apply_override(doc, "output.path", Json(out_path).dump());
    if (!format.empty()) apply_override(doc, "output.format", Json(format).dump());
    if (!method.empty()) apply_override(doc, "method.kind", Json(method).dump());
    if (seed) apply_override(doc, "method.seed", std::to_string(*seed));
    if (samples) apply_override(doc, "method.samples", std::to_string(*samples));
    if (nodes) apply_override(doc, "method.nodes", std::to_string(*nodes));

    const RunConfig config = build_config(command, doc);
    const CommandResult result = execute(config);
    for (const auto& w : result.warnings) err << "cfma: warning: " << w << "\n";
    write_output(config.out_path, result.text, out);
    return result.exit_code;
  } catch (const ConfigError& e) {
    err << "cfma: config error: ";
    if (e.line() > 0) {
      err << e.field() << ":" << e.line() << ":" << e.column() << ": ";
    } else if (!e.field().empty()) {
      err << "field '" << e.field() << "': ";
    }
    err << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "cfma: numeric error (" << to_string(e.code()) << ") in parameter '" << e.parameter() << "': " << e.what()
        << "\n";
    return kExitNumeric;
  }
}

}  // namespace cfma::cli
