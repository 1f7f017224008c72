#include "vexlab_cli/app.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "vexlab/luxemburg.hpp"
#include "vexlab/maximal.hpp"
#include "vexlab/paley.hpp"
#include "vexlab_cli/config.hpp"
#include "vexlab_cli/gridio.hpp"
#include "vexlab_cli/report.hpp"

namespace vexlab::cli {

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  bool no_timing = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "override the config seed");
  sub->add_option("--out", c.out, "write the result here instead of stdout");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--no-timing", c.no_timing, "leave wall-clock timings out of the report");
}

RunConfig load(const std::string& path, const Common& c) {
  RunConfig cfg = load_config(path);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

// Writes `text` to --out or `out`.
void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error("cannot write " + c.out);
  f << text;
}

std::string table_text(const Table& t) {
  std::ostringstream s;
  t.write(s);
  return s.str();
}

// Side tables of `run` land next to --out as <stem>_<table>.csv.
void write_side_tables(const Common& c, const std::map<std::string, Table>& tables) {
  if (c.out.empty()) return;
  const std::filesystem::path out(c.out);
  for (const auto& [name, t] : tables) {
    const auto path = out.parent_path() / (out.stem().string() + "_" + name + ".csv");
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path.string());
    t.write(f);
  }
}

int finish(const Common& c, const RunResult& r, const std::string& primary, std::ostream& out) {
  if (c.format == "json") {
    emit(c, r.report.dump(2) + "\n", out);
  } else {
    const auto it = r.tables.find(primary);
    emit(c, table_text(it != r.tables.end() ? it->second : flatten(r.report["results"])), out);
  }
  return r.violation() ? 2 : 0;
}

std::vector<std::string> listed_or(const RunConfig& cfg, std::vector<std::string> names) {
  std::vector<std::string> listed;
  for (const auto& n : names)
    if (cfg.lists(n)) listed.push_back(n);
  return listed.empty() ? names : listed;
}

json grid_json(const GridFunction& f) {
  return {{"max_abs", f.max_abs()}, {"values", f.real()}};
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"vexlab: numerical probes for weighted variable-exponent spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  Common c;
  std::string config;
  std::vector<std::string> fields, reports;

  auto* run = app.add_subcommand("run", "run every probe the config lists");
  auto* norm = app.add_subcommand("norm", "weighted norm of grid fields");
  auto* maximal = app.add_subcommand("maximal", "maximal-operator norm estimate, or M f for --field");
  auto* weight = app.add_subcommand("weight", "A_p constants of the weight");
  auto* wprobe = app.add_subcommand("wprobe", "membership probe over the (s, kappa) grid");
  auto* relations = app.add_subcommand("relations", "relation checks");
  auto* hardy = app.add_subcommand("hardy", "square-function characterization, or S f for --field");
  auto* atoms = app.add_subcommand("atoms", "atomic sums and Campanato norms");
  auto* operators = app.add_subcommand("operators", "operator boundedness and kernel checks");
  auto* report = app.add_subcommand("report", "merge reports over one domain");

  for (auto* sub : {run, norm, maximal, weight, wprobe, relations, hardy, atoms, operators}) {
    sub->add_option("config", config, "YAML run configuration")->required();
    add_common(sub, c);
  }
  norm->add_option("--field", fields, "grid CSV")->required();
  maximal->add_option("--field", fields, "grid CSV");
  hardy->add_option("--field", fields, "grid CSV");
  report->add_option("reports", reports, "report JSON files")->required();
  report->add_option("--out", c.out, "write the merged report here");
  report->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << version_string() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "vexlab: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    RunOptions ro;
    ro.timing = !c.no_timing;
    if (*report) {
      std::vector<json> docs;
      for (const auto& path : reports) {
        std::ifstream f(path);
        if (!f) throw Error("cannot read " + path);
        try {
          docs.push_back(json::parse(f));
        } catch (const json::exception& e) {
          throw Error(path + ": " + e.what());
        }
      }
      const json merged = merge_reports(docs, reports);
      emit(c, c.format == "json" ? merged.dump(2) + "\n" : table_text(flatten(merged["results"])), out);
      return merged["violations"].empty() ? 0 : 2;
    }

    const RunConfig cfg = load(config, c);
    if (*norm) {
      const Domain d = cfg.make_domain();
      const SpaceSpec s(cfg.make_exponent(d), cfg.make_weight(d));
      json rows = json::array();
      Table t{{"field", "norm"}, {}};
      for (const auto& path : fields) {
        const double v = weighted_norm(read_grid_csv_file(path, d), s);
        rows.push_back({{"field", path}, {"norm", v}});
        t.rows.push_back({path, format_number(v)});
      }
      RunResult r;
      r.report = report_header(cfg);
      r.report["results"] = {{"norm", rows}};
      r.report["warnings"] = json::array();
      r.report["violations"] = json::array();
      r.tables["norm"] = t;
      return finish(c, r, "norm", out);
    }
    if ((*maximal || *hardy) && !fields.empty()) {
      if (fields.size() != 1) throw Error("--field takes one grid here");
      const Domain d = cfg.make_domain();
      const GridFunction f = read_grid_csv_file(fields.front(), d);
      json res;
      GridFunction g(d);
      if (*maximal) {
        g = hl_maximal(f, cfg.make_family(d));
        res = {{"maximal", grid_json(g)}};
      } else {
        const SpaceSpec s(cfg.make_exponent(d), cfg.make_weight(d));
        const ScaleGrid sg = ScaleGrid::standard(d);
        g = lusin_area(f, sg);
        res = {{"hardy", grid_json(g)}};
        res["hardy"]["hardy_norm"] = weighted_norm(g, s);
      }
      if (c.format == "csv") {
        std::ostringstream s;
        write_grid_csv(s, g);
        emit(c, s.str(), out);
        return 0;
      }
      json rep = report_header(cfg);
      rep["results"] = res;
      rep["warnings"] = json::array();
      rep["violations"] = json::array();
      emit(c, rep.dump(2) + "\n", out);
      return 0;
    }

    std::vector<std::string> probes;
    std::string primary;
    if (*run) {
      for (const auto& name : probe_order())
        if (cfg.lists(name)) probes.push_back(name);
      if (probes.empty()) throw ConfigError(cfg.source + ": no probes listed");
      primary = "summary";
    } else if (*weight) {
      probes = {"ap-constant"};
      primary = "weight";
    } else if (*wprobe) {
      probes = {"wprobe"};
      primary = "wprobe";
    } else if (*maximal) {
      probes = {"maximal"};
      primary = "maximal";
    } else if (*relations) {
      probes = listed_or(cfg, {"relation1", "relation3"});
      primary = "relations";
    } else if (*hardy) {
      probes = {"hardy"};
      primary = "hardy";
    } else if (*atoms) {
      probes = {"atoms"};
      primary = "atoms";
    } else {
      probes = {"operators"};
      primary = "operators";
    }
    RunResult r = run_probes(cfg, probes, ro);
    if (*run) write_side_tables(c, r.tables);
    return finish(c, r, primary, out);
  } catch (const std::exception& e) {
    err << "vexlab: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace vexlab::cli
