#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vexlab_cli/config.hpp"

namespace vexlab::cli {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const;
};

struct RunResult {
  // version, schema, config_hash, config, domain, results, warnings,
  // violations and (unless disabled) timing
  json report;
  std::map<std::string, Table> tables;
  bool violation() const { return !report["violations"].empty(); }
};

struct RunOptions {
  bool timing = true;
};

// Runs the named probes in dependency order (see probe_order()).
RunResult run_probes(const RunConfig& cfg, const std::vector<std::string>& probes, const RunOptions& opt = {});

// Report skeleton shared by every subcommand.
json report_header(const RunConfig& cfg);

// probe,quantity,value rows for every numeric or boolean leaf of `results`.
Table flatten(const json& results);

// Merges reports over one domain; throws "domain mismatch" otherwise.
json merge_reports(const std::vector<json>& reports, const std::vector<std::string>& names);

std::string version_string();

}  // namespace vexlab::cli
