#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "vexlab/dictionary.hpp"
#include "vexlab/exponents.hpp"
#include "vexlab/grid.hpp"
#include "vexlab/luxemburg.hpp"
#include "vexlab/trend.hpp"

namespace vexlab::cli {

using json = nlohmann::json;

// Schema problems, reported as "file:line:col: message".
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kSchemaVersion = 1;

// Probes in the order they run: exponent diagnostics, weight constants,
// membership, then Hardy-space and operator probes.
const std::vector<std::string>& probe_order();

/**
 * A validated run configuration. Every section is stored normalized, with
 * defaults filled in, so the echo in a report is complete and the hash
 * does not depend on formatting of the source file.
 */
struct RunConfig {
  std::string source;
  std::uint64_t seed = 1;
  json domain;      // {dim, L, N}
  json exponent;    // {form, ...}
  json weight;      // {form, ...}
  json family;      // {kind, ...}
  json dictionary;  // {kind, ...}
  json thresholds;  // {stable_rel, growth_rel}
  json probes;      // name -> params, only the probes the file asks for

  json echo() const;
  // SHA-256 of the compact echo.
  std::string hash() const;
  // Params for probe `name`, defaults when the file does not list it.
  json probe(const std::string& name) const;
  bool lists(const std::string& name) const { return probes.contains(name); }

  Domain make_domain() const;
  ExponentField make_exponent(const Domain& d) const;
  WeightField make_weight(const Domain& d) const;
  BallFamily make_family(const Domain& d) const;
  Dictionary make_dictionary(const Domain& d) const;
  TrendThresholds make_thresholds() const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& name = "<config>");

// Defaults for one probe (throws ConfigError for an unknown name).
json default_probe(const std::string& name);

std::string sha256_hex(const std::string& bytes);

}  // namespace vexlab::cli
