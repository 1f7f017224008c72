#include "vexlab_cli/report.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <set>

#include "vexlab/atoms.hpp"
#include "vexlab/maximal.hpp"
#include "vexlab/operators.hpp"
#include "vexlab/paley.hpp"
#include "vexlab/random.hpp"
#include "vexlab/weights.hpp"
#include "vexlab_cli/gridio.hpp"

#ifndef VEXLAB_VERSION
#define VEXLAB_VERSION "0.0.0"
#endif

namespace vexlab::cli {

std::string version_string() { return std::string("vexlab ") + VEXLAB_VERSION; }

void Table::write(std::ostream& out) const {
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

namespace {

std::string num(double v) { return format_number(v); }

json pairs(const std::vector<std::pair<double, double>>& v) {
  json out = json::array();
  for (const auto& [a, b] : v) out.push_back({a, b});
  return out;
}

json ball_json(const Ball& b) { return {{"center", {b.center[0], b.center[1]}}, {"radius", b.radius}}; }

json ap_json(const ApReport& r, const TrendThresholds& t) {
  return {{"constant", r.constant_estimate},
          {"argmax_ball", ball_json(r.argmax_ball)},
          {"trend", pairs(r.trend)},
          {"verdict", to_string(r.verdict(t))}};
}

json estimate_json(const OperatorNormEstimate& e) {
  json trend = json::array();
  for (const auto& [n, v] : e.trend) trend.push_back({n, v});
  return {{"value", e.value}, {"argmax_entry", e.argmax_entry}, {"trend", trend}, {"skipped", e.skipped}};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json wprobe_json(const WProbeReport& r) {
  json est = json::array(), verdict = json::array(), valid = json::array(), cap = json::array(),
       dict = json::array();
  for (std::size_t si = 0; si < r.s_grid.size(); ++si) {
    json e = json::array(), v = json::array(), ok = json::array(), c = json::array(), dt = json::array();
    for (std::size_t ki = 0; ki < r.kappa_grid.size(); ++ki) {
      const WProbeCell& cell = r.cell(si, ki);
      e.push_back(cell.valid ? json(cell.estimate.value) : json(nullptr));
      v.push_back(cell.valid ? json(to_string(cell.verdict)) : json("invalid"));
      ok.push_back(cell.valid);
      c.push_back(pairs(cell.cap_trend));
      dt.push_back(estimate_json(cell.estimate)["trend"]);
    }
    est.push_back(e);
    verdict.push_back(v);
    valid.push_back(ok);
    cap.push_back(c);
    dict.push_back(dt);
  }
  json kappa = json::array();
  for (const auto& k : r.kappa_estimate) kappa.push_back(optional_json(k));
  return {{"s_grid", r.s_grid},
          {"kappa_grid", r.kappa_grid},
          {"estimate", est},
          {"cell_verdict", verdict},
          {"valid", valid},
          {"cap_trend", cap},
          {"dictionary_trend", dict},
          {"s_omega", optional_json(r.s_omega_estimate)},
          {"kappa_estimate", kappa},
          {"condition_i_finite", r.condition_i_finite},
          {"verdict", to_string(r.verdict)}};
}

Table wprobe_table(const WProbeReport& r) {
  Table t{{"s", "kappa", "estimate", "stable"}, {}};
  for (std::size_t si = 0; si < r.s_grid.size(); ++si)
    for (std::size_t ki = 0; ki < r.kappa_grid.size(); ++ki) {
      const WProbeCell& c = r.cell(si, ki);
      t.rows.push_back({num(r.s_grid[si]), num(r.kappa_grid[ki]), c.valid ? num(c.estimate.value) : "null",
                        c.valid && c.verdict == TrendVerdict::Stable ? "true" : "false"});
    }
  return t;
}

Table trend_table(const std::string& xname, const json& trend) {
  Table t{{xname, "value"}, {}};
  for (const json& p : trend) t.rows.push_back({p[0].dump(), p[1].dump()});
  return t;
}

// Everything a probe may need, built on first use.
class Context {
 public:
  explicit Context(const RunConfig& c)
      : cfg(c), d(c.make_domain()), p(c.make_exponent(d)), w(c.make_weight(d)), s(p, w), t(c.make_thresholds()) {}

  const BallFamily& family() {
    if (!F_) F_.emplace(cfg.make_family(d));
    return *F_;
  }
  const Dictionary& dictionary() {
    if (!D_) D_.emplace(cfg.make_dictionary(d));
    return *D_;
  }
  const ScaleGrid& scales() {
    if (!sg_) sg_.emplace(ScaleGrid::standard(d));
    return *sg_;
  }
  Dictionary band_limited(int per_level, int levels) { return band_limited_dictionary(d, cfg.seed, per_level, levels); }

  const RunConfig& cfg;
  Domain d;
  ExponentField p;
  WeightField w;
  SpaceSpec s;
  TrendThresholds t;
  std::optional<WProbeReport> membership;  // from wprobe or relation1

  json results = json::object();
  json warnings = json::array();
  json violations = json::array();
  std::map<std::string, Table> tables;

  void warn(const std::string& probe, const std::string& msg) { warnings.push_back(probe + ": " + msg); }

 private:
  std::optional<BallFamily> F_;
  std::optional<Dictionary> D_;
  std::optional<ScaleGrid> sg_;
};

WProbeOptions probe_options(const json& prm, const TrendThresholds& t) {
  WProbeOptions o;
  o.s_grid = prm["s_grid"].get<std::vector<double>>();
  o.kappa_grid = prm["kappa_grid"].get<std::vector<double>>();
  o.thresholds = t;
  return o;
}

void run_log_holder(Context& c, const json& prm) {
  const int refinements = prm["refinements"];
  const auto diag = log_holder_diagnostic(c.p, refinements);
  std::vector<double> v;
  for (const auto& pr : diag.trend) v.push_back(pr.second);
  c.results["log-holder"] = {{"c_log", diag.c_log_estimate},
                             {"c_infty", diag.c_infty_estimate},
                             {"p_infty", diag.p_infty_fit},
                             {"trend", pairs(diag.trend)},
                             {"verdict", to_string(classify_trend(v, c.t))}};
  c.tables["log_holder"] = trend_table("spacing", c.results["log-holder"]["trend"]);
}

void run_ap_constant(Context& c, const json& prm) {
  const std::string kind = prm["kind"];
  Table t{{"kind", "p", "constant", "verdict"}, {}};
  json out;
  if (kind == "classical") {
    double p = prm["p"];
    if (p == 0.0) {
      if (!c.p.is_constant()) throw ConfigError(c.cfg.source + ": probes.ap-constant.p is required for a variable exponent");
      p = c.p.p_minus();
    }
    if (p < 1.0) throw ConfigError(c.cfg.source + ": probes.ap-constant.p must be >= 1");
    out = ap_json(classical_ap_constant(c.w, p, c.family()), c.t);
    out["kind"] = kind;
    out["p"] = p;
    t.rows.push_back({kind, num(p), out["constant"].dump(), out["verdict"]});
  } else {
    if (!(c.p.p_minus() > 1.0)) {
      c.warn("ap-constant", "variable A_p needs p_- > 1; skipped");
      c.results["ap-constant"] = {{"kind", kind}, {"skipped", true}};
      return;
    }
    out = ap_json(variable_ap_constant(c.w, c.p, c.family()), c.t);
    out["kind"] = kind;
    out["p"] = c.p.is_constant() ? json(c.p.p_minus()) : json("variable");
    t.rows.push_back({kind, c.p.is_constant() ? num(c.p.p_minus()) : "variable", out["constant"].dump(), out["verdict"]});
  }
  c.results["ap-constant"] = out;
  c.tables["weight"] = t;
}

void run_maximal(Context& c, const json&) {
  const BallFamily& F = c.family();
  const auto est = operator_norm_estimate([&F](const GridFunction& g) { return hl_maximal(g, F); }, c.s, c.dictionary());
  json out = estimate_json(est);
  out["verdict"] = to_string(classify_trend(est.trend_values(), c.t));
  for (const auto& wmsg : est.warnings) c.warn("maximal", wmsg);
  c.results["maximal"] = out;
  c.tables["maximal"] = trend_table("size", out["trend"]);
}

void run_wprobe(Context& c, const json& prm) {
  if (!(c.p.p_minus() > 0.0)) throw Error("exponent must be positive");
  auto rep = w_membership_probe(c.w, c.p, c.family(), c.dictionary(), probe_options(prm, c.t));
  for (const auto& cell : rep.cells)
    if (!cell.valid) c.warn("wprobe", "cell s=" + num(cell.s) + " kappa=" + num(cell.kappa) + " invalid: " + cell.reason);
  c.results["wprobe"] = wprobe_json(rep);
  c.tables["wprobe"] = wprobe_table(rep);
  c.membership = std::move(rep);
}

void relations_row(Context& c, const std::string& rel, const std::string& verdict, bool violation) {
  auto& t = c.tables["relations"];
  if (t.header.empty()) t.header = {"relation", "verdict", "violation"};
  t.rows.push_back({rel, verdict, violation ? "true" : "false"});
}

void run_relation1(Context& c, const json& prm) {
  if (!(c.p.p_minus() > 1.0)) {
    c.warn("relation1", "needs p_- > 1; skipped");
    c.results["relation1"] = {{"skipped", true}};
    return;
  }
  Relation1Options opt;
  opt.log_holder_refinements = prm["refinements"];
  opt.probe = probe_options(prm, c.t);
  auto rep = check_relation1(c.w, c.p, c.family(), c.dictionary(), opt);
  json lh{{"c_log", rep.log_holder.c_log_estimate},
          {"c_infty", rep.log_holder.c_infty_estimate},
          {"trend", pairs(rep.log_holder.trend)},
          {"verdict", to_string(rep.log_holder_verdict)}};
  c.results["relation1"] = {{"log_holder", lh},
                            {"variable_ap", ap_json(rep.variable_ap, c.t)},
                            {"membership", wprobe_json(rep.membership)},
                            {"verdict", to_string(rep.membership.verdict)},
                            {"violation", rep.violation}};
  if (rep.violation)
    c.violations.push_back("relation1: log-Hölder and A_p(.) trends stable but membership probe inconsistent");
  relations_row(c, "relation1", std::string(to_string(rep.membership.verdict)), rep.violation);
  c.membership = std::move(rep.membership);
}

void run_relation3(Context& c, const json& prm) {
  if (!(c.p.p_minus() >= 1.0)) {
    c.warn("relation3", "needs p_- >= 1; skipped");
    c.results["relation3"] = {{"skipped", true}};
    return;
  }
  const double s = prm["s"];
  if (!(s > 1.0)) throw ConfigError(c.cfg.source + ": probes.relation3.s must exceed 1");
  const bool use_probe = prm["use_probe"];
  if (use_probe && !c.membership)
    c.membership = w_membership_probe(c.w, c.p, c.family(), c.dictionary(), probe_options(default_probe("wprobe"), c.t));
  const auto rep = check_relation3(c.w, c.p, s, c.family(), use_probe ? &*c.membership : nullptr, c.t);
  c.results["relation3"] = {{"s_used", rep.s_used},
                            {"variable_ap", ap_json(rep.variable_ap, c.t)},
                            {"verdict", to_string(rep.verdict)},
                            {"membership", rep.membership ? json(to_string(*rep.membership)) : json(nullptr)},
                            {"violation", rep.violation}};
  if (rep.violation) c.violations.push_back("relation3: A_{sp(.)} constant of w^{1/s} grows");
  relations_row(c, "relation3", std::string(to_string(rep.verdict)), rep.violation);
}

// Octave levels whose band [xi_j / 2, 2 xi_j] stays below half the Nyquist
// frequency; closer to Nyquist the lattice itself distorts the functionals.
int resolved_levels(const Domain& d) {
  int levels = 0;
  while (8.0 * d.min_frequency() * std::ldexp(1.0, levels) <= d.max_frequency() / 2.0) ++levels;
  return std::max(levels, 1);
}

void run_hardy(Context& c, const json& prm) {
  const int levels = prm["levels"].get<int>() > 0 ? prm["levels"].get<int>() : resolved_levels(c.d);
  const Dictionary D = c.band_limited(prm["per_level"], levels);
  CharacterizationConfig cc;
  cc.lambda = prm["lambda"];
  cc.s = prm["s"];
  cc.schwartz_order = prm["schwartz_order"];
  cc.alpha = prm["alpha"];
  cc.d = prm["d"];
  cc.include_intrinsic = prm["intrinsic"];
  const auto rep = characterization_probe(D, c.s, cc);
  json band = json::object();
  Table t{{"functional", "min_ratio", "max_ratio"}, {}};
  for (const auto& [name, b] : rep.ratio_band) {
    band[name] = {b.first, b.second};
    t.rows.push_back({name, num(b.first), num(b.second)});
  }
  json trend = json::array();
  for (const auto& [n, v] : rep.band_trend) trend.push_back({n, v});
  for (const auto& wmsg : rep.warnings) c.warn("hardy", wmsg);
  c.results["hardy"] = {{"levels", levels},
                        {"ratio_band", band}, {"band_trend", trend}, {"band_verdict", to_string(rep.band_verdict)}};
  c.tables["hardy"] = t;
}

void run_atoms(Context& c, const json& prm) {
  const int n = c.d.dim();
  const double s_index = prm["s"];
  const int deg = prm["d"];
  const double r = prm["r"];
  if (!(r > 1.0)) throw ConfigError(c.cfg.source + ": probes.atoms.r must exceed 1");
  if (deg < static_cast<int>(std::floor(n * s_index - n)))
    c.warn("atoms", "d below floor(n s - n): outside the atomic characterization range");
  const double L = c.d.half_width();
  Rng rng(c.cfg.seed);
  Table t{{"sum", "hardy", "atomic", "ratio"}, {}};
  json ratios = json::array();
  double lo = INFINITY, hi = 0.0;
  std::optional<GridFunction> first;
  const int sums = prm["sums"], per = prm["atoms_per_sum"];
  for (int k = 0; k < sums; ++k) {
    AtomicSum sum;
    for (int j = 0; j < per; ++j) {
      Ball B{{rng.uniform(-L / 2, L / 2), n == 2 ? rng.uniform(-L / 2, L / 2) : 0.0}, rng.uniform(L / 16, L / 4)};
      sum.atoms.push_back(make_atom(B, deg, c.s, r, rng.next()));
      sum.lambdas.push_back(rng.uniform(0.2, 1.0));
    }
    const auto rep = atomic_norm_probe(sum, c.s, c.scales());
    if (!first) {
      GridFunction f(c.d);
      for (std::size_t j = 0; j < sum.atoms.size(); ++j) f += sum.atoms[j].values * cplx(sum.lambdas[j]);
      first = std::move(f);
    }
    ratios.push_back({{"hardy", rep.hardy}, {"atomic", rep.atomic}, {"ratio", rep.ratio}});
    t.rows.push_back({std::to_string(k), num(rep.hardy), num(rep.atomic), num(rep.ratio)});
    lo = std::min(lo, rep.ratio);
    hi = std::max(hi, rep.ratio);
  }
  json out{{"sums", ratios}, {"ratio_band", sums > 0 ? json{lo, hi} : json(nullptr)}};
  if (first) {
    const auto F = dyadic_family(c.d, 16, {L / 16, L / 8, L / 4});
    const auto cols = default_campanato_collections(F, c.cfg.seed);
    out["campanato"] = campanato_norm(*first, c.s, prm["q"], prm["campanato_d"], cols, s_index);
  }
  c.results["atoms"] = out;
  c.tables["atoms"] = t;
}

void run_operators(Context& c, const json& prm) {
  const int n = c.d.dim();
  const Dictionary D = c.band_limited(prm["per_level"], prm["levels"]);
  json bounded = json::array();
  Table t{{"operator", "target", "value", "verdict"}, {}};
  for (const json& e : prm["boundedness"]) {
    const std::string name = e["operator"], target = e["target"];
    const double delta = e["delta"], s = e["s"];
    Operator T;
    if (name == "bochner-riesz") {
      if (!(delta > (n - 1) / 2.0)) c.warn("operators", "bochner-riesz delta <= (n-1)/2");
      if (!(s > 1.0 && s < (n + 1 + 2 * delta) / (2.0 * n)))
        c.warn("operators", "bochner-riesz: s outside (1, (n+1+2 delta)/(2n))");
      BochnerRieszSpec spec = BochnerRieszSpec::standard(c.d, delta);
      if (!e["eps_grid"].empty()) spec.epsilon_grid = e["eps_grid"].get<std::vector<double>>();
      T = [spec](const GridFunction& g) { return bochner_riesz_maximal(g, spec); };
    } else {
      if (name == "riesz2" && n == 1) c.warn("operators", "riesz2 is the zero operator in 1D");
      if (name != "identity" && !(s > 1.0 && s < (n + delta) / double(n)))
        c.warn("operators", name + ": s outside (1, (n+delta)/n)");
      const auto M = MultiplierOperator::by_name(name);
      T = [M](const GridFunction& g) { return apply_multiplier(M, g); };
    }
    const auto est = boundedness_probe(
        T, c.s, D, target == "hardy-to-hardy" ? BoundednessTarget::HardyToHardy : BoundednessTarget::HardyToLebesgue,
        c.scales());
    for (const auto& wmsg : est.warnings) c.warn("operators", wmsg);
    json r = estimate_json(est);
    r["operator"] = name;
    r["target"] = target;
    r["verdict"] = to_string(classify_trend(est.trend_values(), c.t));
    t.rows.push_back({name, target, num(est.value), r["verdict"]});
    bounded.push_back(r);
  }
  json kernels = json::array();
  for (const json& e : prm["kernel_checks"]) {
    const std::string name = e["operator"];
    if (name == "bochner-riesz") throw ConfigError(c.cfg.source + ": kernel checks take identity, hilbert, riesz1 or riesz2");
    const auto rep = czo_kernel_check(c.d, MultiplierOperator::by_name(name), e["delta"], e["radii"].get<std::vector<double>>());
    kernels.push_back({{"operator", name},
                       {"delta", e["delta"]},
                       {"estimate", rep.estimate},
                       {"trend", pairs(rep.trend)},
                       {"verdict", to_string(rep.verdict)}});
  }
  c.results["operators"] = {{"boundedness", bounded}, {"kernel_checks", kernels}};
  c.tables["operators"] = t;
}

using Runner = std::function<void(Context&, const json&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> m{
      {"log-holder", run_log_holder}, {"ap-constant", run_ap_constant}, {"maximal", run_maximal},
      {"wprobe", run_wprobe},         {"relation1", run_relation1},     {"relation3", run_relation3},
      {"hardy", run_hardy},           {"atoms", run_atoms},             {"operators", run_operators}};
  return m;
}

}  // namespace

json report_header(const RunConfig& cfg) {
  return {{"version", version_string()},
          {"schema", kSchemaVersion},
          {"config_hash", cfg.hash()},
          {"config", cfg.echo()},
          {"domain", cfg.domain}};
}

RunResult run_probes(const RunConfig& cfg, const std::vector<std::string>& probes, const RunOptions& opt) {
  const std::set<std::string> wanted(probes.begin(), probes.end());
  for (const auto& p : wanted)
    if (!runners().count(p)) throw ConfigError("unknown probe '" + p + "'");
  Context c(cfg);
  json timing = json::object();
  for (const std::string& name : probe_order()) {
    if (!wanted.count(name)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    runners().at(name)(c, cfg.probe(name));
    timing[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  RunResult out;
  out.report = report_header(cfg);
  out.report["results"] = c.results;
  out.report["warnings"] = c.warnings;
  out.report["violations"] = c.violations;
  if (opt.timing) out.report["timing"] = timing;
  out.tables = std::move(c.tables);
  return out;
}

Table flatten(const json& results) {
  Table t{{"probe", "quantity", "value"}, {}};
  std::function<void(const std::string&, const std::string&, const json&)> walk =
      [&](const std::string& probe, const std::string& path, const json& v) {
        if (v.is_object()) {
          for (const auto& [k, x] : v.items()) walk(probe, path.empty() ? k : path + "." + k, x);
        } else if (v.is_array()) {
          for (std::size_t i = 0; i < v.size(); ++i) walk(probe, path + "[" + std::to_string(i) + "]", v[i]);
        } else if (v.is_number() || v.is_boolean() || v.is_null()) {
          t.rows.push_back({probe, path, v.dump()});
        }
      };
  for (const auto& [probe, v] : results.items()) walk(probe, "", v);
  return t;
}

json merge_reports(const std::vector<json>& reports, const std::vector<std::string>& names) {
  if (reports.empty()) throw Error("nothing to merge");
  json merged{{"version", version_string()}, {"schema", kSchemaVersion}};
  merged["domain"] = reports.front().at("domain");
  merged["sources"] = json::array();
  merged["results"] = json::object();
  merged["warnings"] = json::array();
  merged["violations"] = json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const json& r = reports[i];
    if (!r.contains("domain") || !r.contains("results")) throw Error(names[i] + ": not a vexlab report");
    if (r["domain"] != merged["domain"]) throw Error("domain mismatch: " + names[i]);
    merged["sources"].push_back({{"file", names[i]}, {"config_hash", r.value("config_hash", "")}});
    for (const auto& [k, v] : r["results"].items()) {
      std::string key = k;
      for (int dup = 2; merged["results"].contains(key); ++dup) key = k + "#" + std::to_string(dup);
      merged["results"][key] = v;
    }
    for (const auto& x : r.value("warnings", json::array())) merged["warnings"].push_back(x);
    for (const auto& x : r.value("violations", json::array())) merged["violations"].push_back(x);
  }
  return merged;
}

}  // namespace vexlab::cli
