#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <locale>
#include <map>
#include <sstream>

#include "cfma/cli/config.hpp"
#include "cfma/cli/output.hpp"
#include "cfma/cli/run.hpp"
#include "doctest.h"
#include "oracle_values.hpp"

namespace fs = std::filesystem;
using namespace cfma::cli;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cfma");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string config_path(const std::string& name) { return std::string(CFMA_SOURCE_DIR) + "/configs/" + name; }

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("cfma_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Minimal reader for the documented CSV schema: '#' comments, one header
// row, RFC 4180 quoting.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::map<std::string, std::string>> rows;

  double num(std::size_t row, const std::string& col) const { return std::stod(rows.at(row).at(col)); }
};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      t.comments.push_back(line.substr(2));
    } else if (t.columns.empty()) {
      t.columns = split_csv(line);
    } else {
      const auto cells = split_csv(line);
      REQUIRE(cells.size() == t.columns.size());
      std::map<std::string, std::string> row;
      for (std::size_t i = 0; i < cells.size(); ++i) row[t.columns[i]] = cells[i];
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

const std::vector<std::string> kFixed11{"--channel.gain1=degenerate:1", "--channel.gain2=degenerate:1"};
const std::vector<std::string> kFig2{"--channel.gain1=gaussian:2,0.25", "--channel.gain2=gaussian:2,0.25"};
const std::vector<std::string> kFig3{"--channel.gain1=gaussian:2,0.7225", "--channel.gain2=gaussian:2,0.7225"};

std::vector<std::string> with(std::vector<std::string> base, std::initializer_list<std::string> more) {
  base.insert(base.begin(), more.begin(), more.begin() + 1);  // command first
  base.insert(base.end(), more.begin() + 1, more.end());
  return base;
}

class ThreadsEnv {
 public:
  explicit ThreadsEnv(const char* value) { ::setenv("CFMA_THREADS", value, 1); }
  ~ThreadsEnv() { ::unsetenv("CFMA_THREADS"); }
};

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.29248125036057809) == "0.29248125");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(123456789012.0) == "1.23456789e+11");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(format_number(2.0 / 3.0) == "0.666666667");
  CHECK(format_number(NAN) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
  // Locale-free even when the global C++ locale uses a decimal comma.
  try {
    const std::locale saved = std::locale::global(std::locale("de_DE.UTF-8"));
    CHECK(format_number(0.5) == "0.5");
    std::locale::global(saved);
  } catch (const std::runtime_error&) {
    MESSAGE("de_DE locale not installed; locale check skipped");
  }
}

TEST_CASE("csv writer") {
  CsvWriter csv("demo");
  csv.comment("hello");
  csv.header({"x", "label"});
  csv.cell(0.5).cell("a=(1,1);b=(0,1)").end_row();
  csv.cell(std::int64_t{3}).cell("say \"hi\"").end_row();
  csv.cell(true).empty().end_row();
  CHECK(csv.str() ==
        "# cfma-demo v1 (cfma 1.0.0)\n# hello\nx,label\n0.5,\"a=(1,1);b=(0,1)\"\n3,\"say \"\"hi\"\"\"\ntrue,\n");
  const Table t = parse_csv(csv.str());
  CHECK(t.rows.at(0).at("label") == "a=(1,1);b=(0,1)");
  CHECK(t.rows.at(1).at("label") == "say \"hi\"");
}

TEST_CASE("overrides") {
  Json doc = Json::object();
  apply_override(doc, "channel.power", "2");
  apply_override(doc, "channel.gain1", "gaussian:2,0.25");
  apply_override(doc, "check.a", "[1,2]");
  apply_override(doc, "region.sic_corners", "true");
  CHECK(doc["channel"]["power"] == 2);
  CHECK(doc["channel"]["gain1"] == "gaussian:2,0.25");
  CHECK(doc["check"]["a"] == Json::array({1, 2}));
  CHECK(doc["region"]["sic_corners"] == true);
  CHECK_THROWS_AS(apply_override(doc, "channel.power.x", "1"), ConfigError);
  CHECK_THROWS_AS(apply_override(doc, "channel..power", "1"), ConfigError);
}

TEST_CASE("config errors exit 2 with diagnostics") {
  SUBCASE("syntax error carries line and column") {
    const auto path = write_file("syntax.json", "{\n  \"channel\": {\n    \"gain1\": \"degenerate:1\",\n  }\n}\n");
    const auto o = cli({"rates", "--config", path});
    CHECK(o.code == kExitConfig);
    CHECK(o.err.find("syntax.json:4:3:") != std::string::npos);
  }
  SUBCASE("wrong type names the field") {
    const auto path = write_file("type.json", R"({"channel": {"gain1": "degenerate:1", "gain2": 5}})");
    const auto o = cli({"rates", "--config", path});
    CHECK(o.code == kExitConfig);
    CHECK(o.err.find("'channel.gain2'") != std::string::npos);
  }
  SUBCASE("unknown field") {
    const auto o = cli(with(kFixed11, {"rates", "--rates.gama=1"}));
    CHECK(o.code == kExitConfig);
    CHECK(o.err.find("'rates.gama'") != std::string::npos);
  }
  SUBCASE("missing channel") {
    CHECK(cli({"rates"}).code == kExitConfig);
  }
  SUBCASE("exactly one command block") {
    const auto o = cli(with(kFixed11, {"rates", "--rates.gamma=1", "--region.sic_corners=true"}));
    CHECK(o.code == kExitConfig);
    CHECK(o.err.find("exactly one command block") != std::string::npos);
    const auto m = cli(with(kFixed11, {"rates", "--region.sic_corners=true"}));
    CHECK(m.code == kExitConfig);
  }
  SUBCASE("seed required for mc") {
    const auto o = cli(with(kFig2, {"rates", "--method", "mc"}));
    CHECK(o.code == kExitConfig);
    CHECK(o.err.find("seed") != std::string::npos);
    CHECK(cli(with(kFig2, {"rates", "--method", "mc", "--seed", "5", "--samples", "1000"})).code == kExitOk);
  }
  SUBCASE("empirical gains need mc with a seed") {
    const auto data = write_file("gains.txt", "1.0\n2.0\n1.5\n");
    const std::vector<std::string> emp{"--channel.gain1=empirical:" + data, "--channel.gain2=degenerate:1"};
    CHECK(cli(with(emp, {"rates"})).code == kExitConfig);
    CHECK(cli(with(emp, {"rates", "--method", "quadrature"})).code == kExitConfig);
    CHECK(cli(with(emp, {"rates", "--seed", "1", "--samples", "100"})).code == kExitOk);
  }
  SUBCASE("bad gain text, singular coefficients, bad grids") {
    CHECK(cli({"rates", "--channel.gain1=cauchy:1", "--channel.gain2=degenerate:1"}).code == kExitConfig);
    CHECK(cli(with(kFixed11, {"rates", "--rates.coeffs=[{\"a\":[1,1],\"b\":[2,2]}]"})).code == kExitConfig);
    CHECK(cli(with(kFixed11, {"check", "--check.scan=[{\"lo\":-1,\"hi\":1}]"})).code == kExitConfig);
    CHECK(cli(with(kFixed11, {"sweep", "--sweep.axes=[{\"name\":\"nu\",\"values\":[1]}]"})).code == kExitConfig);
  }
  SUBCASE("CLI-level errors") {
    CHECK(cli({"bogus"}).code == kExitConfig);
    CHECK(cli(with(kFixed11, {"rates", "--format", "xml"})).code == kExitConfig);
    CHECK(cli(with(kFixed11, {"rates", "--nodots"})).code == kExitConfig);
    CHECK(cli({"rates", "--config", "/nonexistent/cfma.json"}).code == kExitConfig);
    const ThreadsEnv env("zero");
    CHECK(cli(with(kFixed11, {"rates"})).code == kExitConfig);
  }
  SUBCASE("help and version") {
    const auto h = cli({"--help"});
    CHECK(h.code == kExitOk);
    CHECK(h.out.find("Exit codes") != std::string::npos);
    CHECK(cli({"--version"}).code == kExitOk);
  }
}

TEST_CASE("cmd rates") {
  SUBCASE("fixed channel row") {
    const auto o = cli(with(kFixed11, {"rates"}));
    REQUIRE(o.code == kExitOk);
    const Table t = parse_csv(o.out);
    CHECK(o.out.rfind("# cfma-rates v1", 0) == 0);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].at("R1") == "0.29248125");
    CHECK(t.rows[0].at("R2") == "0.29248125");
    CHECK(t.rows[0].at("valid") == "true");
  }
  SUBCASE("gamma = 0 is a numeric error naming gamma") {
    const auto o = cli(with(kFixed11, {"rates", "--rates.gamma=0"}));
    CHECK(o.code == kExitNumeric);
    CHECK(o.err.find("'gamma'") != std::string::npos);
    CHECK(cli(with(kFixed11, {"rates", "--rates.betas=[1,0]"})).code == kExitNumeric);
  }
  SUBCASE("dotted override changes the result") {
    const auto o = cli(with(kFixed11, {"rates", "--channel.power=2"}));
    REQUIRE(o.code == kExitOk);
    // S = 5, M = 2 + 0: r = 1/2 log2(5/2)
    CHECK(parse_csv(o.out).num(0, "R1") == doctest::Approx(0.5 * std::log2(2.5)).epsilon(1e-8));
  }
  SUBCASE("Fig. 2 config: one row per gamma, red curve values") {
    const auto o = cli({"rates", "--config", config_path("fig2_rates.json")});
    REQUIRE(o.code == kExitOk);
    const Table t = parse_csv(o.out);
    REQUIRE(t.rows.size() == 201);
    const std::size_t mid = 100;  // gamma = 1 on the symmetric log grid
    CHECK(t.num(mid, "gamma") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.num(mid, "R1") == doctest::Approx(oracle::kRateFirstBase_2_025).epsilon(1e-8));
    CHECK(t.num(mid, "R2") == doctest::Approx(oracle::kRateSecondBase_2_025).epsilon(1e-8));
    CHECK(t.num(mid, "R1") + t.num(mid, "R2") == doctest::Approx(oracle::kCapacity_2_025).epsilon(1e-8));
  }
  SUBCASE("json format") {
    const auto o = cli(with(kFixed11, {"rates", "--format", "json"}));
    REQUIRE(o.code == kExitOk);
    const Json doc = Json::parse(o.out);
    CHECK(doc["format"] == "cfma-rates");
    CHECK(doc["version"] == 1);
    CHECK(doc["rows"][0]["R1"].get<double>() == doctest::Approx(0.5 * std::log2(1.5)).epsilon(1e-15));
  }
}

TEST_CASE("cmd region") {
  SUBCASE("Fig. 2/3 panels respect the pentagon") {
    for (const char* var : {"0", "0.25", "0.5625", "0.7225"}) {
      const std::string law = std::string("gaussian:2,") + var;
      const auto o = cli({"region", "--config", config_path("fig3_region.json"), "--channel.gain1=" + law,
                          "--channel.gain2=" + law});
      REQUIRE(o.code == kExitOk);
      const Table t = parse_csv(o.out);
      REQUIRE(t.rows.size() > 2);
      double c1 = 0, c2 = 0, csum = 0;
      for (const auto& c : t.comments) {
        if (c.rfind("pentagon:", 0) == 0) std::sscanf(c.c_str(), "pentagon: C1=%lf C2=%lf Csum=%lf", &c1, &c2, &csum);
      }
      REQUIRE(csum > 0.0);
      double best_sum = 0.0;
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        // 9 printed digits: allow rounding slack.
        CHECK(t.num(i, "R1") <= c1 + 1e-8);
        CHECK(t.num(i, "R2") <= c2 + 1e-8);
        CHECK(t.num(i, "R1") + t.num(i, "R2") <= csum + 2e-8);
        if (t.rows[i].at("coeffs").rfind("a=(1,1)", 0) == 0) best_sum = std::max(best_sum, t.num(i, "R1") + t.num(i, "R2"));
      }
      if (std::string(var) == "0.7225") {
        CHECK(best_sum < csum - 1e-4);  // Fig. 3 last panel falls off the boundary
      } else {
        CHECK(best_sum == doctest::Approx(csum).epsilon(1e-7));
      }
    }
  }
  SUBCASE("degenerate single gamma -> 1 row") {
    const auto o = cli(with(kFixed11, {"region", "--region.gamma_grid={\"values\":[1]}"}));
    REQUIRE(o.code == kExitOk);
    CHECK(parse_csv(o.out).rows.size() == 1);
  }
  SUBCASE("SIC only -> 2 rows") {
    const auto o = cli(with(kFig2, {"region", "--region.coeffs=[]", "--region.sic_corners=true"}));
    REQUIRE(o.code == kExitOk);
    const Table t = parse_csv(o.out);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].at("coeffs") == "a=(1,0);b=(0,1)");
    CHECK(t.rows[1].at("coeffs") == "a=(0,1);b=(1,0)");
  }
}

TEST_CASE("cmd check") {
  SUBCASE("Fig. 2 achievable around gamma = 1") {
    const auto o = cli({"check", "--config", config_path("fig2_check.json")});
    REQUIRE(o.code == kExitOk);
    const Json doc = Json::parse(o.out);
    CHECK(doc["format"] == "cfma-check");
    CHECK(doc["verdict"] == "achievable");
    bool around_one = false;
    for (const auto& iv : doc["intervals"]) {
      if (iv["source"] == "scan" && iv["lo"].get<double>() < 1.0 && iv["hi"].get<double>() > 1.0) around_one = true;
    }
    CHECK(around_one);
    CHECK(doc["conditions"].contains("iid_gaussian"));
    CHECK(doc["curves"]["columns"].size() == 5);
    CHECK(doc["curves"]["rows"].size() == 281);
    // Sufficient curve lies above the iff curve (Jensen).
    for (const auto& row : doc["curves"]["rows"]) {
      if (row[3].get<double>() <= 0.0) CHECK(row[1].get<double>() <= 0.0);
    }
  }
  SUBCASE("Fig. 3 not achievable") {
    const auto o = cli(with(kFig3, {"check"}));
    REQUIRE(o.code == kExitOk);
    const Json doc = Json::parse(o.out);
    CHECK(doc["verdict"] == "not-achievable");
    CHECK(doc["intervals"].empty());
  }
  SUBCASE("fixed channel interval contains Theorem 3") {
    const std::string r = "degenerate:" + std::to_string(std::sqrt(3.0));
    const auto o = cli({"check", "--channel.gain1=" + r, "--channel.gain2=" + r});
    REQUIRE(o.code == kExitOk);
    const Json doc = Json::parse(o.out);
    const auto& thm3 = doc["conditions"]["thm3"];
    REQUIRE(thm3.size() == 1);
    bool covered = false;
    for (const auto& iv : doc["intervals"]) {
      if (iv["source"] == "scan" && iv["lo"].get<double>() <= thm3[0]["lo"].get<double>() + 1e-6 &&
          iv["hi"].get<double>() >= thm3[0]["hi"].get<double>() - 1e-6) {
        covered = true;
      }
    }
    CHECK(covered);
  }
  SUBCASE("csv curves and general a") {
    const auto o = cli({"check", "--config", config_path("fig1_check.json"), "--check.a=[1,2]"});
    REQUIRE(o.code == kExitOk);
    const Table t = parse_csv(o.out);
    CHECK(t.columns == std::vector<std::string>{"gamma", "general_a", "iff_std_error"});
    CHECK(t.rows.size() == 400);
  }
  SUBCASE("explicitly requested inapplicable condition is a numeric error") {
    const auto o = cli({"check", "--channel.gain1=gaussian:2,0.25", "--channel.gain2=gaussian:3,0.25",
                        "--check.conditions=[\"iid_gaussian\"]"});
    CHECK(o.code == kExitNumeric);
  }
}

TEST_CASE("cmd sweep") {
  SUBCASE("1x1 grid -> single row") {
    const auto o = cli(with(kFig2, {"sweep", "--sweep.axes=[{\"name\":\"sigma\",\"values\":[0.5]}]"}));
    REQUIRE(o.code == kExitOk);
    const Table t = parse_csv(o.out);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].at("label") == "III");
  }
  SUBCASE("Figs. 2-3 grid") {
    const auto o = cli(with(kFig2, {"sweep", "--sweep.axes=[{\"name\":\"mu\",\"values\":[2]},"
                                             "{\"name\":\"sigma\",\"values\":[0.5,0.85]}]"}));
    REQUIRE(o.code == kExitOk);
    const Table t = parse_csv(o.out);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].at("region_ii") == "true");
    CHECK(t.rows[1].at("label") == "I");
  }
  SUBCASE("Fig. 4: the I/II boundary is monotone in sigma for each mu") {
    const auto o = cli(with(kFig2, {"sweep", "--nodes", "32",
                                    "--sweep.axes=[{\"name\":\"mu\",\"values\":[1,2,5,10]},"
                                    "{\"name\":\"sigma\",\"lo\":0.1,\"hi\":6,\"n\":12}]"}));
    REQUIRE(o.code == kExitOk);
    const Table t = parse_csv(o.out);
    REQUIRE(t.rows.size() == 48);
    for (int mu = 0; mu < 4; ++mu) {
      bool seen_region_i = false;
      for (int s = 0; s < 12; ++s) {
        const bool region_i = t.rows[mu * 12 + s].at("label") == "I";
        if (seen_region_i) CHECK(region_i);
        seen_region_i = seen_region_i || region_i;
      }
    }
  }
  SUBCASE("Fig. 5: region III is closed toward the upper right") {
    const auto o = cli({"sweep", "--config", config_path("fig5_sweep.json"),
                        "--sweep.axes=[{\"name\":\"mu1\",\"lo\":0.5,\"hi\":5,\"n\":7},"
                        "{\"name\":\"mu2\",\"lo\":0.5,\"hi\":5,\"n\":7}]"});
    REQUIRE(o.code == kExitOk);
    const Table t = parse_csv(o.out);
    REQUIRE(t.rows.size() == 49);
    auto label = [&](int i, int j) { return t.rows[i * 7 + j].at("label"); };
    CHECK(label(6, 6) == "III");
    CHECK(label(0, 0) == "I");
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 7; ++j) {
        if (label(i, j) != "III") continue;
        if (i + 1 < 7) CHECK(label(i + 1, j) == "III");
        if (j + 1 < 7) CHECK(label(i, j + 1) == "III");
      }
    }
  }
  SUBCASE("failing cells carry an error marker, exit 0 if any succeeded") {
    // sigma = 0 and mu = 0 gives a zero channel: classification still works; a
    // negative variance fails.
    const auto o = cli(with(kFig2, {"sweep", "--sweep.axes=[{\"name\":\"var\",\"values\":[-1,0.25]}]"}));
    REQUIRE(o.code == kExitOk);
    const Table t = parse_csv(o.out);
    CHECK(t.rows[0].at("label") == "error");
    CHECK_FALSE(t.rows[0].at("error").empty());
    CHECK(t.rows[1].at("label") == "III");
    CHECK(o.err.find("1 of 2 sweep cells failed") != std::string::npos);
    CHECK(cli(with(kFig2, {"sweep", "--sweep.axes=[{\"name\":\"var\",\"values\":[-1]}]"})).code == kExitNumeric);
  }
}

TEST_CASE("cmd coeffs") {
  SUBCASE("Fig. 1: (1,1) ranked first") {
    const auto o = cli({"coeffs", "--config", config_path("fig1_coeffs.json")});
    REQUIRE(o.code == kExitOk);
    const Table t = parse_csv(o.out);
    CHECK(t.columns == std::vector<std::string>{"a1", "a2", "interval_lo", "interval_hi", "total_measure"});
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rows[0].at("a1") == "1");
    CHECK(t.rows[0].at("a2") == "1");
    CHECK(t.num(0, "total_measure") > t.num(1, "total_measure"));
    CHECK(t.num(0, "interval_lo") == doctest::Approx(oracle::kFig1Lo_11).epsilon(1e-5));
  }
  SUBCASE("a_max = 1 -> single entry") {
    const auto o = cli(with(kFig2, {"coeffs", "--coeffs.a_max=1"}));
    REQUIRE(o.code == kExitOk);
    CHECK(parse_csv(o.out).rows.size() == 1);
  }
  SUBCASE("fixed channel matches Theorem 3 within 1e-4") {
    const std::string r = "degenerate:" + std::to_string(std::sqrt(3.0));
    const auto o = cli({"coeffs", "--channel.gain1=" + r, "--channel.gain2=" + r, "--coeffs.a_max=1"});
    REQUIRE(o.code == kExitOk);
    const Table t = parse_csv(o.out);
    REQUIRE(t.rows.size() == 1);
    CHECK(std::abs(t.num(0, "interval_lo") - 0.6709) < 1e-4);
    CHECK(std::abs(t.num(0, "interval_hi") - 1.4906) < 1e-4);
  }
}

TEST_CASE("outputs are byte-reproducible") {
  const std::string a = (scratch_dir() / "a.csv").string();
  const std::string b = (scratch_dir() / "b.csv").string();
  const std::vector<std::string> sweep{"sweep",
                                       "--channel.gain1=gaussian:2,0.25",
                                       "--channel.gain2=gaussian:2,0.25",
                                       "--method", "mc", "--seed", "2024", "--samples", "20000",
                                       "--sweep.scan=[{\"lo\":0.2,\"hi\":5,\"n\":24}]",
                                       "--sweep.axes=[{\"name\":\"mu\",\"values\":[1.5,2,3]},"
                                       "{\"name\":\"sigma\",\"values\":[0.3,0.6]}]"};
  auto run_to = [&](const std::string& path, const char* threads) {
    const ThreadsEnv env(threads);
    auto args = sweep;
    args.insert(args.end(), {"--out", path});
    REQUIRE(cli(args).code == kExitOk);
    return read_file(path);
  };
  const std::string one = run_to(a, "1");
  const std::string four = run_to(b, "4");
  CHECK(!one.empty());
  CHECK(one == four);
  CHECK(one == run_to(a, "1"));

  const auto x = cli({"check", "--config", config_path("fig2_check.json")});
  const auto y = cli({"check", "--config", config_path("fig2_check.json")});
  CHECK(x.out == y.out);

  fs::remove_all(scratch_dir());
}
