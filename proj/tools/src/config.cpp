#include "vexlab_cli/config.hpp"

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "vexlab/maximal.hpp"

namespace vexlab::cli {

namespace {

class Reader {
 public:
  explicit Reader(std::string file) : file_(std::move(file)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& msg) const {
    const YAML::Mark m = at.Mark();
    if (m.line < 0) throw ConfigError(file_ + ": " + msg);
    throw ConfigError(file_ + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1) + ": " + msg);
  }

  void expect_map(const YAML::Node& n, const std::string& what) const {
    if (!n.IsMap()) fail(n, what + " must be a mapping");
  }

  void allow(const YAML::Node& map, const std::set<std::string>& keys, const std::string& what) const {
    for (const auto& kv : map) {
      const auto k = kv.first.as<std::string>();
      if (!keys.count(k)) fail(kv.first, "unknown key '" + k + "' in " + what);
    }
  }

  double number(const YAML::Node& n, const std::string& what) const {
    if (!n.IsScalar()) fail(n, what + " must be a number");
    try {
      const double v = n.as<double>();
      if (!std::isfinite(v)) fail(n, what + " must be finite");
      return v;
    } catch (const YAML::BadConversion&) {
      fail(n, what + " must be a number");
    }
  }

  long integer(const YAML::Node& n, const std::string& what) const {
    const double v = number(n, what);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) fail(n, what + " must be an integer");
    return static_cast<long>(v);
  }

  double number_or(const YAML::Node& map, const std::string& key, double dflt, const std::string& what) const {
    const YAML::Node n = map[key];
    return n ? number(n, what + "." + key) : dflt;
  }

  double required(const YAML::Node& map, const std::string& key, const std::string& what) const {
    const YAML::Node n = map[key];
    if (!n) fail(map, what + " needs '" + key + "'");
    return number(n, what + "." + key);
  }

  std::string string(const YAML::Node& n, const std::string& what) const {
    if (!n.IsScalar()) fail(n, what + " must be a string");
    return n.as<std::string>();
  }

  // Converts `n` following the shape of `tmpl`, which also supplies defaults.
  json convert(const YAML::Node& n, const json& tmpl, const std::string& what) const {
    if (tmpl.is_boolean()) {
      try {
        return n.as<bool>();
      } catch (const YAML::BadConversion&) {
        fail(n, what + " must be true or false");
      }
    }
    if (tmpl.is_number_integer()) return integer(n, what);
    if (tmpl.is_number()) return number(n, what);
    if (tmpl.is_string()) {
      const std::string v = string(n, what);
      check_enum(n, what, v);
      return v;
    }
    if (tmpl.is_array()) {
      if (!n.IsSequence()) fail(n, what + " must be a list");
      const json elem = tmpl.empty() ? json(0.0) : tmpl.front();
      json out = json::array();
      std::size_t i = 0;
      for (const auto& e : n) out.push_back(convert(e, elem, what + "[" + std::to_string(i++) + "]"));
      return out;
    }
    expect_map(n, what);
    json out = tmpl;
    for (const auto& kv : n) {
      const auto k = kv.first.as<std::string>();
      if (!tmpl.contains(k)) fail(kv.first, "unknown key '" + k + "' in " + what);
      out[k] = convert(kv.second, tmpl[k], what + "." + k);
    }
    return out;
  }

 private:
  void check_enum(const YAML::Node& n, const std::string& what, const std::string& v) const {
    static const std::map<std::string, std::set<std::string>> enums{
        {"kind", {"classical", "variable"}},
        {"operator", {"identity", "hilbert", "riesz1", "riesz2", "bochner-riesz"}},
        {"target", {"hardy-to-hardy", "hardy-to-lebesgue"}},
    };
    const std::string key = what.substr(what.find_last_of('.') + 1);
    const auto it = enums.find(key);
    if (it != enums.end() && !it->second.count(v)) fail(n, "invalid value '" + v + "' for " + what);
  }

  std::string file_;
};

json parse_exponent(const Reader& r, const YAML::Node& n) {
  if (!n) return {{"form", "constant"}, {"value", 2.0}};
  r.expect_map(n, "exponent");
  if (n["constant"]) {
    r.allow(n, {"constant"}, "exponent");
    const double v = r.number(n["constant"], "exponent.constant");
    if (!(v > 0.0)) r.fail(n["constant"], "exponent must be positive");
    return {{"form", "constant"}, {"value", v}};
  }
  if (!n["form"]) r.fail(n, "exponent needs 'constant' or 'form'");
  const std::string form = r.string(n["form"], "exponent.form");
  json out{{"form", form}};
  if (form == "affine-radial") {
    r.allow(n, {"form", "a", "b"}, "exponent");
    out["a"] = r.required(n, "a", "exponent");
    out["b"] = r.required(n, "b", "exponent");
  } else if (form == "sin-perturbed") {
    r.allow(n, {"form", "base", "amplitude", "frequency"}, "exponent");
    out["base"] = r.required(n, "base", "exponent");
    out["amplitude"] = r.required(n, "amplitude", "exponent");
    out["frequency"] = r.number_or(n, "frequency", 1.0, "exponent");
  } else if (form == "gaussian-bump") {
    r.allow(n, {"form", "base", "amplitude"}, "exponent");
    out["base"] = r.required(n, "base", "exponent");
    out["amplitude"] = r.required(n, "amplitude", "exponent");
  } else if (form == "spike") {
    r.allow(n, {"form", "p_infty", "k_max"}, "exponent");
    out["p_infty"] = r.required(n, "p_infty", "exponent");
    out["k_max"] = n["k_max"] ? r.integer(n["k_max"], "exponent.k_max") : 3;
  } else {
    r.fail(n["form"], "unknown exponent form '" + form + "'");
  }
  return out;
}

json parse_weight(const Reader& r, const YAML::Node& n) {
  if (!n) return {{"form", "constant"}, {"value", 1.0}};
  r.expect_map(n, "weight");
  if (n["constant"]) {
    r.allow(n, {"constant"}, "weight");
    const double v = r.number(n["constant"], "weight.constant");
    if (!(v > 0.0)) r.fail(n["constant"], "weight must be positive");
    return {{"form", "constant"}, {"value", v}};
  }
  if (!n["form"]) r.fail(n, "weight needs 'constant' or 'form'");
  const std::string form = r.string(n["form"], "weight.form");
  json out{{"form", form}};
  if (form == "power" || form == "shifted-power") {
    r.allow(n, {"form", "a"}, "weight");
    out["a"] = r.required(n, "a", "weight");
  } else if (form == "step") {
    r.allow(n, {"form", "height"}, "weight");
    out["height"] = r.required(n, "height", "weight");
  } else {
    r.fail(n["form"], "unknown weight form '" + form + "'");
  }
  return out;
}

json number_list(const Reader& r, const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence() || n.size() == 0) r.fail(n, what + " must be a nonempty list");
  json out = json::array();
  for (const auto& e : n) {
    const double v = r.number(e, what);
    if (!(v > 0.0)) r.fail(e, what + " entries must be positive");
    out.push_back(v);
  }
  return out;
}

json default_radii(const json& dom) {
  const double L = dom["L"], h = 2.0 * L / dom["N"].get<int>();
  json radii = json::array();
  for (double t = h; t <= L / 2.0 * (1 + 1e-12); t *= 2.0) radii.push_back(t);
  return radii;
}

json parse_family(const Reader& r, const YAML::Node& n, const json& dom) {
  const int dim = dom["dim"];
  const int N = dom["N"];
  if (!n) {
    if (dim == 1) return {{"kind", "windows"}, {"max_width", N}};
    return {{"kind", "lattice"}, {"radii", default_radii(dom)}};
  }
  r.expect_map(n, "family");
  const std::string kind = n["kind"] ? r.string(n["kind"], "family.kind") : (dim == 1 ? "windows" : "lattice");
  json out{{"kind", kind}};
  if (kind == "windows") {
    r.allow(n, {"kind", "max_width"}, "family");
    if (dim != 1) r.fail(n, "window family needs dim 1");
    const long w = n["max_width"] ? r.integer(n["max_width"], "family.max_width") : N;
    if (w < 1 || w > N) r.fail(n["max_width"], "family.max_width must lie in [1, N]");
    out["max_width"] = w;
  } else if (kind == "lattice") {
    r.allow(n, {"kind", "radii"}, "family");
    out["radii"] = n["radii"] ? number_list(r, n["radii"], "family.radii") : default_radii(dom);
  } else if (kind == "dyadic") {
    r.allow(n, {"kind", "centers", "radii"}, "family");
    out["centers"] = n["centers"] ? r.integer(n["centers"], "family.centers") : 16;
    out["radii"] = n["radii"] ? number_list(r, n["radii"], "family.radii") : default_radii(dom);
  } else {
    r.fail(n["kind"], "unknown family kind '" + kind + "'");
  }
  return out;
}

json parse_dictionary(const Reader& r, const YAML::Node& n) {
  if (!n) return {{"kind", "standard"}, {"levels", 8}, {"random_per_scale", 1}};
  r.expect_map(n, "dictionary");
  const std::string kind = n["kind"] ? r.string(n["kind"], "dictionary.kind") : "standard";
  if (kind == "standard") {
    r.allow(n, {"kind", "levels", "random_per_scale"}, "dictionary");
    return {{"kind", kind},
            {"levels", n["levels"] ? r.integer(n["levels"], "dictionary.levels") : 8},
            {"random_per_scale", n["random_per_scale"] ? r.integer(n["random_per_scale"], "dictionary.random_per_scale") : 1}};
  }
  if (kind == "band-limited") {
    r.allow(n, {"kind", "levels", "per_level"}, "dictionary");
    return {{"kind", kind},
            {"levels", n["levels"] ? r.integer(n["levels"], "dictionary.levels") : 8},
            {"per_level", n["per_level"] ? r.integer(n["per_level"], "dictionary.per_level") : 4}};
  }
  r.fail(n["kind"], "unknown dictionary kind '" + kind + "'");
}

json operator_template() {
  return {{"operator", "hilbert"},      {"target", "hardy-to-hardy"}, {"delta", 0.5}, {"s", 1.05},
          {"eps_grid", json::array()}};
}

json kernel_template() { return {{"operator", "hilbert"}, {"delta", 0.5}, {"radii", json::array()}}; }

// Operator lists default by dimension; filled in after parsing.
void fill_operator_defaults(json& p, const json& dom) {
  const int dim = dom["dim"];
  const double L = dom["L"], h = 2.0 * L / dom["N"].get<int>();
  const std::string cz = dim == 1 ? "hilbert" : "riesz1";
  if (p["boundedness"].empty()) {
    json a = operator_template(), b = operator_template();
    a["operator"] = cz;
    b["operator"] = "bochner-riesz";
    b["target"] = "hardy-to-lebesgue";
    b["delta"] = 2.0;
    p["boundedness"] = json::array({a, b});
  }
  if (p["kernel_checks"].empty()) {
    json k = kernel_template();
    k["operator"] = cz;
    p["kernel_checks"] = json::array({k});
  }
  for (json& k : p["kernel_checks"])
    if (k["radii"].empty()) {
      // |y| from 16h out to L/4, where |x| > 2|y| still fits the box
      json radii = json::array();
      for (double t = 16.0 * h; t <= L / 4.0 * (1 + 1e-12); t *= std::sqrt(2.0)) radii.push_back(t);
      if (radii.size() < 3) radii = json::array({16.0 * h, 18.0 * h, 20.0 * h});
      k["radii"] = radii;
    }
}

json filled_defaults(const std::string& name, const json& dom) {
  json p = default_probe(name);
  if (name == "operators") {
    p["boundedness"] = json::array();
    p["kernel_checks"] = json::array();
    fill_operator_defaults(p, dom);
  }
  return p;
}

}  // namespace

const std::vector<std::string>& probe_order() {
  static const std::vector<std::string> order{"log-holder", "ap-constant", "maximal", "wprobe", "relation1",
                                              "relation3",  "hardy",       "atoms",   "operators"};
  return order;
}

json default_probe(const std::string& name) {
  const json s_grid{1.05, 1.1, 1.2, 1.4, 2.0, 3.0};
  const json kappa_grid{1.05, 1.2, 1.5, 2.0, 3.0};
  if (name == "log-holder") return {{"refinements", 6}};
  if (name == "ap-constant") return {{"kind", "variable"}, {"p", 0.0}};
  if (name == "maximal") return json::object();
  if (name == "wprobe") return {{"s_grid", s_grid}, {"kappa_grid", kappa_grid}};
  if (name == "relation1") return {{"refinements", 6}, {"s_grid", s_grid}, {"kappa_grid", kappa_grid}};
  if (name == "relation3") return {{"s", 2.0}, {"use_probe", true}};
  if (name == "hardy")
    return {{"lambda", 3.0}, {"s", 1.05},     {"schwartz_order", 2}, {"alpha", 1.0},
            {"d", 0},        {"intrinsic", true}, {"per_level", 4},  {"levels", 0}};
  if (name == "atoms")
    return {{"sums", 20}, {"atoms_per_sum", 2}, {"d", 1}, {"r", 2.0}, {"s", 1.05}, {"q", 2.0}, {"campanato_d", 1}};
  if (name == "operators")
    return {{"boundedness", json::array({operator_template()})},
            {"kernel_checks", json::array({kernel_template()})},
            {"per_level", 4},
            {"levels", 8}};
  throw ConfigError("unknown probe '" + name + "'");
}

RunConfig parse_config(const std::string& text, const std::string& name) {
  Reader r(name);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(name + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                      ": " + e.msg);
  }
  if (!root || root.IsNull()) throw ConfigError(name + ": empty config");
  r.expect_map(root, "config");
  r.allow(root, {"version", "seed", "domain", "exponent", "weight", "family", "dictionary", "thresholds", "probes"},
          "config");
  if (!root["version"]) r.fail(root, "missing 'version'");
  if (r.integer(root["version"], "version") != kSchemaVersion)
    r.fail(root["version"], "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");

  RunConfig c;
  c.source = name;
  if (root["seed"]) {
    const long s = r.integer(root["seed"], "seed");
    if (s < 0) r.fail(root["seed"], "seed must be >= 0");
    c.seed = static_cast<std::uint64_t>(s);
  }

  const YAML::Node dom = root["domain"];
  if (!dom) r.fail(root, "missing 'domain'");
  r.expect_map(dom, "domain");
  r.allow(dom, {"dim", "L", "N"}, "domain");
  const long dim = dom["dim"] ? r.integer(dom["dim"], "domain.dim") : 1;
  if (dim != 1 && dim != 2) r.fail(dom["dim"], "domain.dim must be 1 or 2");
  const double L = r.required(dom, "L", "domain");
  if (!(L > 0.0)) r.fail(dom["L"], "domain.L must be positive");
  if (!dom["N"]) r.fail(dom, "domain needs 'N'");
  const long N = r.integer(dom["N"], "domain.N");
  if (N < 8 || N % 2 != 0) r.fail(dom["N"], "domain.N must be an even integer >= 8");
  c.domain = {{"dim", dim}, {"L", L}, {"N", N}};

  c.exponent = parse_exponent(r, root["exponent"]);
  c.weight = parse_weight(r, root["weight"]);
  c.family = parse_family(r, root["family"], c.domain);
  c.dictionary = parse_dictionary(r, root["dictionary"]);
  c.thresholds = r.convert(root["thresholds"] ? root["thresholds"] : YAML::Node(YAML::NodeType::Map),
                           json{{"stable_rel", 0.10}, {"growth_rel", 0.25}}, "thresholds");

  c.probes = json::object();
  if (const YAML::Node probes = root["probes"]) {
    if (probes.IsSequence()) {
      // bare list of probe names
      for (const auto& e : probes) {
        const std::string p = r.string(e, "probes entry");
        if (std::find(probe_order().begin(), probe_order().end(), p) == probe_order().end())
          r.fail(e, "unknown probe '" + p + "'");
        c.probes[p] = filled_defaults(p, c.domain);
      }
    } else {
      r.expect_map(probes, "probes");
      for (const auto& kv : probes) {
        const auto p = kv.first.as<std::string>();
        json tmpl;
        try {
          tmpl = default_probe(p);
        } catch (const ConfigError&) {
          r.fail(kv.first, "unknown probe '" + p + "'");
        }
        const YAML::Node body = kv.second.IsNull() ? YAML::Node(YAML::NodeType::Map) : kv.second;
        json params = r.convert(body, tmpl, "probes." + p);
        if (p == "operators") {
          // unlisted operator sections fall back to the per-dimension defaults
          if (!body["boundedness"]) params["boundedness"] = json::array();
          if (!body["kernel_checks"]) params["kernel_checks"] = json::array();
          fill_operator_defaults(params, c.domain);
        }
        c.probes[p] = params;
      }
    }
  }
  // catch bad parameter values (exponents, radii) at load time
  try {
    const Domain d = c.make_domain();
    c.make_exponent(d);
    c.make_weight(d);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(name + ": " + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot read config");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

json RunConfig::echo() const {
  return {{"version", kSchemaVersion}, {"seed", seed},         {"domain", domain},         {"exponent", exponent},
          {"weight", weight},          {"family", family},     {"dictionary", dictionary}, {"thresholds", thresholds},
          {"probes", probes}};
}

std::string RunConfig::hash() const { return sha256_hex(echo().dump()); }

json RunConfig::probe(const std::string& name) const {
  return probes.contains(name) ? probes[name] : filled_defaults(name, domain);
}

Domain RunConfig::make_domain() const {
  return Domain::make(domain["dim"].get<int>(), domain["L"].get<double>(), domain["N"].get<int>());
}

ExponentField RunConfig::make_exponent(const Domain& d) const {
  const std::string form = exponent["form"];
  if (form == "constant") return ExponentField::constant(d, exponent["value"]);
  if (form == "affine-radial") return exponent_forms::affine_radial(d, exponent["a"], exponent["b"]);
  if (form == "sin-perturbed")
    return exponent_forms::sin_perturbed(d, exponent["base"], exponent["amplitude"], exponent["frequency"]);
  if (form == "gaussian-bump") return exponent_forms::gaussian_bump(d, exponent["base"], exponent["amplitude"]);
  return exponent_forms::spike(d, exponent["p_infty"], exponent["k_max"].get<int>());
}

WeightField RunConfig::make_weight(const Domain& d) const {
  const std::string form = weight["form"];
  if (form == "constant") return WeightField::constant(d, weight["value"]);
  if (form == "power") return weight_forms::power(d, weight["a"]);
  if (form == "shifted-power") return weight_forms::shifted_power(d, weight["a"]);
  return weight_forms::step(d, weight["height"]);
}

BallFamily RunConfig::make_family(const Domain& d) const {
  const std::string kind = family["kind"];
  if (kind == "windows") return window_family(d, family["max_width"].get<int>());
  const auto radii = family["radii"].get<std::vector<double>>();
  if (kind == "lattice") return lattice_family(d, radii);
  return dyadic_family(d, family["centers"].get<int>(), radii);
}

Dictionary RunConfig::make_dictionary(const Domain& d) const {
  if (dictionary["kind"] == "band-limited")
    return band_limited_dictionary(d, seed, dictionary["per_level"].get<int>(), dictionary["levels"].get<int>());
  DictionarySpec spec;
  spec.seed = seed;
  spec.max_levels = dictionary["levels"].get<int>();
  spec.random_per_scale = dictionary["random_per_scale"].get<int>();
  return standard_dictionary(d, spec);
}

TrendThresholds RunConfig::make_thresholds() const {
  TrendThresholds t;
  t.stable_rel = thresholds["stable_rel"];
  t.growth_rel = thresholds["growth_rel"];
  return t;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

}  // namespace vexlab::cli
