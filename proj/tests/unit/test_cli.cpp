#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vexlab_cli/app.hpp"
#include "vexlab_cli/config.hpp"
#include "vexlab_cli/gridio.hpp"
#include "vexlab_cli/report.hpp"

using namespace vexlab;
using namespace vexlab::cli;
namespace fs = std::filesystem;

namespace {

std::string config_path(const std::string& name) { return std::string(VEXLAB_CONFIG_DIR) + "/" + name; }

struct Outcome {
  int code = -1;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "vexlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  Outcome o;
  o.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / "vexlab_cli";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

const char* kSmall = R"(version: 1
seed: 3
domain: {dim: 1, L: 8, N: 64}
exponent: {constant: 2}
weight: {form: shifted-power, a: 0.5}
probes:
  wprobe: {s_grid: [1.05, 2.0], kappa_grid: [1.05, 1.5]}
  ap-constant: {kind: classical, p: 2}
)";

std::string anchor_of(const std::string& text) {
  try {
    parse_config(text, "cfg.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, SchemaErrorsCarryLineAnchors) {
  EXPECT_EQ(anchor_of("version: 1\ndomain: {L: 8, N: 64}\nbogus: 3\n").rfind("cfg.yaml:3:1:", 0), 0u);
  EXPECT_EQ(anchor_of("version: 2\ndomain: {L: 8, N: 64}\n").rfind("cfg.yaml:1:10:", 0), 0u);
  const std::string odd = anchor_of("version: 1\ndomain:\n  L: 8\n  N: 63\n");
  EXPECT_EQ(odd.rfind("cfg.yaml:4:", 0), 0u) << odd;
  EXPECT_NE(odd.find("even"), std::string::npos);
  const std::string probe = anchor_of("version: 1\ndomain: {L: 8, N: 64}\nprobes:\n  - maximal\n  - nonsense\n");
  EXPECT_EQ(probe.rfind("cfg.yaml:5:", 0), 0u) << probe;
  const std::string typed = anchor_of("version: 1\ndomain: {L: 8, N: 64}\nprobes:\n  wprobe: {s_grid: [1.1, abc]}\n");
  EXPECT_EQ(typed.rfind("cfg.yaml:4:", 0), 0u) << typed;
  const std::string syntax = anchor_of("version: 1\ndomain: {L: 8, N: 64\n");
  EXPECT_EQ(syntax.rfind("cfg.yaml:", 0), 0u);
  EXPECT_NE(anchor_of("version: 1\ndomain: {L: 8, N: 64}\nexponent: {form: spike}\n").find("p_infty"),
            std::string::npos);
  EXPECT_NE(anchor_of("version: 1\ndomain: {L: 8, N: 64}\nprobes:\n  ap-constant: {kind: sideways}\n"),
            "");
}

TEST(Config, DefaultsAreFilledAndHashed) {
  const RunConfig a = parse_config(kSmall, "a");
  const RunConfig b = parse_config(std::string(kSmall) + "\n# trailing comment\n", "b");
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 64u);
  EXPECT_EQ(a.family["kind"], "windows");
  EXPECT_EQ(a.family["max_width"], 64);
  EXPECT_EQ(a.probe("relation3")["s"], 2.0);
  RunConfig c = a;
  c.seed = 4;
  EXPECT_NE(c.hash(), a.hash());
  // sha256("abc")
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Config, OperatorDefaultsFollowDimension) {
  const RunConfig one = parse_config("version: 1\ndomain: {dim: 1, L: 8, N: 256}\nprobes: [operators]\n");
  const json& ops = one.probes["operators"];
  ASSERT_EQ(ops["boundedness"].size(), 2u);
  EXPECT_EQ(ops["boundedness"][0]["operator"], "hilbert");
  EXPECT_EQ(ops["boundedness"][1]["operator"], "bochner-riesz");
  EXPECT_EQ(ops["kernel_checks"][0]["radii"].front(), 1.0);  // 16 h
  const RunConfig two = parse_config("version: 1\ndomain: {dim: 2, L: 4, N: 128}\nprobes:\n  operators: {}\n");
  EXPECT_EQ(two.probes["operators"]["boundedness"][0]["operator"], "riesz1");
  EXPECT_GE(two.probes["operators"]["kernel_checks"][0]["radii"].size(), 3u);
}

TEST(Cli, MinimalConfigGivesUnitConstant) {
  const auto r = run_probes(load_config(config_path("minimal.yaml")), {"ap-constant"}, {false});
  EXPECT_NEAR(r.report["results"]["ap-constant"]["constant"].get<double>(), 1.0, 1e-9);
  EXPECT_FALSE(r.report.contains("timing"));
  EXPECT_TRUE(r.report["violations"].empty());
}

TEST(Cli, WeightCsvIsOneRow) {
  const auto o = invoke({"weight", config_path("minimal.yaml"), "--format", "csv"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"kind", "p", "constant", "verdict"}));
  EXPECT_NEAR(std::stod(rows[1][2]), 1.0, 1e-9);
}

TEST(Cli, RunIsDeterministic) {
  const fs::path cfg = scratch("small.yaml");
  write_file(cfg, kSmall);
  const auto a = invoke({"run", cfg.string(), "--no-timing"});
  const auto b = invoke({"run", cfg.string(), "--no-timing"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto c = invoke({"run", cfg.string(), "--no-timing", "--seed", "11"});
  EXPECT_NE(json::parse(c.out)["config_hash"], json::parse(a.out)["config_hash"]);
  EXPECT_EQ(json::parse(c.out)["config"]["seed"], 11);
}

TEST(Cli, CsvAndJsonCarryIdenticalNumbers) {
  const fs::path cfg = scratch("small.yaml");
  write_file(cfg, kSmall);
  const auto j = invoke({"wprobe", cfg.string(), "--no-timing"});
  const auto c = invoke({"wprobe", cfg.string(), "--format", "csv"});
  ASSERT_EQ(j.code, 0) << j.err;
  ASSERT_EQ(c.code, 0) << c.err;
  const json w = json::parse(j.out)["results"]["wprobe"];
  const auto rows = csv_rows(c.out);
  ASSERT_EQ(rows.size(), 1 + 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"s", "kappa", "estimate", "stable"}));
  std::size_t k = 1;
  for (std::size_t si = 0; si < 2; ++si)
    for (std::size_t ki = 0; ki < 2; ++ki, ++k) {
      EXPECT_EQ(rows[k][0], w["s_grid"][si].dump());
      EXPECT_EQ(rows[k][1], w["kappa_grid"][ki].dump());
      EXPECT_EQ(rows[k][2], w["estimate"][si][ki].dump());
      EXPECT_EQ(rows[k][3], w["cell_verdict"][si][ki] == "stable" ? "true" : "false");
    }
}

TEST(Cli, NormOfIndicatorUnderShiftedWeight) {
  // w = 1 + |x|, f = 1_[0,1), p = 2: the integral of (1 + x)^2 over [0, 1) is 7/3
  const fs::path cfg = scratch("norm.yaml");
  write_file(cfg, "version: 1\ndomain: {dim: 1, L: 8, N: 256}\nexponent: {constant: 2}\n"
                  "weight: {form: shifted-power, a: 1}\n");
  const fs::path field = scratch("indicator.csv");
  double midpoint_sum = 0.0;
  {
    std::ofstream f(field);
    f.precision(17);
    f << "index,x,re\n";
    const double h = 16.0 / 256;
    for (int j = 0; j < 256; ++j) {
      const double x = -8.0 + (j + 0.5) * h;
      const double v = (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;
      f << j << "," << x << "," << v << "\n";
      midpoint_sum += h * v * (1 + std::abs(x)) * (1 + std::abs(x));
    }
  }
  const auto o = invoke({"norm", cfg.string(), "--field", field.string(), "--format", "csv"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"field", "norm"}));
  const double v = std::stod(rows[1][1]);
  EXPECT_NEAR(v, std::sqrt(midpoint_sum), 1e-12);
  // the midpoint rule is off by h^2 / 12 here
  EXPECT_NEAR(v, std::sqrt(7.0 / 3.0), 1e-3);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"weight", config_path("minimal.yaml")}).code, 0);
  const auto unknown = invoke({"frobnicate"});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
  const auto missing = invoke({"run", "/nonexistent/x.yaml"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("cannot read"), std::string::npos);
  const fs::path bad = scratch("bad.yaml");
  write_file(bad, "version: 1\ndomain: {L: 8, N: 64}\nweight: {form: power}\n");
  const auto schema = invoke({"run", bad.string()});
  EXPECT_EQ(schema.code, 1);
  EXPECT_NE(schema.err.find("bad.yaml:3:"), std::string::npos) << schema.err;
  EXPECT_EQ(invoke({"relations", config_path("relation3-noprobe.yaml"), "--no-timing"}).code, 2);
}

TEST(Cli, BinaryExitStatus) {
  const std::string bin = VEXLAB_BINARY;
  const int ok = std::system((bin + " weight " + config_path("minimal.yaml") + " > /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(ok), 0);
  const int viol = std::system((bin + " relations " + config_path("relation3-noprobe.yaml") + " > /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(viol), 2);
  const int usage = std::system((bin + " nope > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(usage), 1);
}

TEST(Cli, ReportMergeRefusesMismatchedDomains) {
  const fs::path a = scratch("a.json"), b = scratch("b.json"), c = scratch("c.json");
  const fs::path small = scratch("small.yaml");
  write_file(small, kSmall);
  ASSERT_EQ(invoke({"weight", config_path("minimal.yaml"), "--out", a.string(), "--no-timing"}).code, 0);
  ASSERT_EQ(invoke({"weight", small.string(), "--out", b.string(), "--no-timing"}).code, 0);
  ASSERT_EQ(invoke({"wprobe", config_path("minimal.yaml"), "--out", c.string(), "--no-timing"}).code, 0);
  const auto bad = invoke({"report", a.string(), b.string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("domain mismatch"), std::string::npos);
  const auto good = invoke({"report", a.string(), c.string()});
  ASSERT_EQ(good.code, 0) << good.err;
  const json merged = json::parse(good.out);
  EXPECT_TRUE(merged["results"].contains("ap-constant"));
  EXPECT_TRUE(merged["results"].contains("wprobe"));
  EXPECT_EQ(merged["sources"].size(), 2u);
}

TEST(Cli, RunWritesSideTables) {
  const fs::path cfg = scratch("small.yaml");
  write_file(cfg, kSmall);
  const fs::path out = scratch("side.json");
  ASSERT_EQ(invoke({"run", cfg.string(), "--out", out.string()}).code, 0);
  const json rep = json::parse(read_file(out));
  EXPECT_TRUE(rep.contains("timing"));
  EXPECT_EQ(rep["version"], version_string());
  EXPECT_EQ(rep["schema"], kSchemaVersion);
  EXPECT_TRUE(fs::exists(scratch("side_wprobe.csv")));
  EXPECT_TRUE(fs::exists(scratch("side_weight.csv")));
  EXPECT_EQ(csv_rows(read_file(scratch("side_wprobe.csv"))).size(), 5u);
}

TEST(Cli, HypothesisRangesWarnRatherThanFail) {
  const fs::path cfg = scratch("ops.yaml");
  write_file(cfg, R"(version: 1
domain: {dim: 1, L: 8, N: 128}
exponent: {constant: 2}
probes:
  operators:
    boundedness:
      - {operator: hilbert, target: hardy-to-hardy, delta: 0.5, s: 3.0}
      - {operator: bochner-riesz, target: hardy-to-lebesgue, delta: 0.25, s: 2.0, eps_grid: [0.5, 0.25]}
    kernel_checks:
      - {operator: hilbert, delta: 0.5, radii: [1.0, 1.4, 2.0]}
    levels: 3
    per_level: 2
  atoms: {sums: 2, d: 0, s: 3.0}
)");
  const auto o = invoke({"run", cfg.string(), "--no-timing"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json rep = json::parse(o.out);
  std::string all;
  for (const auto& w : rep["warnings"]) all += w.get<std::string>() + "\n";
  EXPECT_NE(all.find("hilbert: s outside"), std::string::npos) << all;
  EXPECT_NE(all.find("bochner-riesz: s outside"), std::string::npos) << all;
  EXPECT_NE(all.find("atoms: d below"), std::string::npos) << all;
  EXPECT_EQ(rep["results"]["operators"]["boundedness"].size(), 2u);
}

TEST(Cli, FieldTransformsRoundTrip) {
  const Domain d = Domain::make(1, 8.0, 64);
  const GridFunction f = GridFunction::sample(d, [](const Point& x) { return std::exp(-x[0] * x[0]); });
  const fs::path field = scratch("gauss.csv");
  {
    std::ofstream out(field);
    write_grid_csv(out, f);
  }
  const GridFunction back = read_grid_csv_file(field.string(), d);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(back[i], f[i]);

  const fs::path cfg = scratch("field.yaml");
  write_file(cfg, "version: 1\ndomain: {dim: 1, L: 8, N: 64}\n");
  const auto m = invoke({"maximal", cfg.string(), "--field", field.string(), "--format", "csv"});
  ASSERT_EQ(m.code, 0) << m.err;
  std::istringstream in(m.out);
  const GridFunction mf = read_grid_csv(in, d);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_GE(mf[i].real(), f[i].real() - 1e-15);
  EXPECT_NEAR(mf.max_abs(), 1.0, 0.05);
}

TEST(GridIo, RejectsMalformedTables) {
  const Domain d = Domain::make(1, 1.0, 8);
  auto bad = [&](const std::string& text) {
    std::istringstream in(text);
    EXPECT_THROW(read_grid_csv(in, d, "t.csv"), Error) << text;
  };
  bad("");
  bad("index,y,re\n");
  bad("index,x,re\n0,-0.875,1\n");                        // incomplete coverage
  bad("index,x,re\n0,0.5,1\n");                           // wrong coordinate
  bad("index,x,re\n0,-0.875,1\n0,-0.875,1\n");            // duplicate
  bad("index,x,re\n9,0.5,1\n");                           // out of range
  bad("index,x,re\n0,-0.875\n");                          // short row
  bad("index,x,re\n0,-0.875,one\n");
}
