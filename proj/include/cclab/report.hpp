#pragma once

#include <iosfwd>
#include <optional>

#include "cclab/inequalities.hpp"
#include "cclab/scenario.hpp"

namespace cclab {

struct SampleCounts {
  int x = 10;       ///< random unit X draws per scenario for A2
  int planes = 10;  ///< random planes per scenario for A3
};

/// Parsed batch configuration. Output path and format come from the CLI.
struct RunConfig {
  std::vector<ScenarioSpec> scenarios;
  std::vector<std::string> checks;  ///< subset of A1 A2 A3 A4 A5 B1 COR HESS IDENTITIES
  std::vector<double> r_grid;
  SampleCounts samples;
  std::uint64_t seed = 0;
  bool flip_rhs_sign = false;  ///< self-test knob: negates every RHS so runs violate
  std::string out_path;
  std::string format = "csv";
};

struct ReportRow {
  std::string scenario_id;
  std::string check;
  std::string subcase;
  double lhs = 0.0;
  double rhs_canonical = 0.0;
  std::optional<double> rhs_variant;
  double slack = 0.0;
  bool holds = false;
  bool equality = false;
  std::string equality_case;
  std::uint64_t seed = 0;
};

/// Strict parse: unknown fields and schema violations raise ConfigError with
/// the offending field named.
RunConfig parse_scenario_file(const std::string& path);

/// One row per (scenario, check, subcase); deterministic given config + seed.
std::vector<ReportRow> run_suite(const RunConfig& config);

bool all_hold(const std::vector<ReportRow>& rows);

void emit_csv(const std::vector<ReportRow>& rows, std::ostream& out);
void emit_json(const std::vector<ReportRow>& rows, std::ostream& out);
void emit_report(const std::vector<ReportRow>& rows, const std::string& format,
                 const std::string& path);

}  // namespace cclab
