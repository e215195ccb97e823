#pragma once

#include <json.hpp>
#include <string>

#include "opjensen/bounds_algebra.hpp"
#include "opjensen/converse.hpp"
#include "opjensen/tail_mc.hpp"

namespace opjensen {

using json = nlohmann::json;

// ---- JSON (de)serialization -------------------------------------------------
//
// matrix:   {"dim": n, "rows": [[...], ...]}        (square, symmetric)
// isometry: {"rows": [[...], ...]} or "identity:n"  (tall rectangular)
// map:      {"coeffs": [a0, a1, ...], "V": <isometry>}
// ensemble: "ensemble": [{"A": <matrix>, "m": .., "M": ..}, ...],
//           "weights": [...]

json matrix_to_json(const HermitianOperator& A);
HermitianOperator matrix_from_json(const json& j);
json phi_to_json(const PhiMap& phi);
PhiMap phi_from_json(const json& j);
WeightedEnsemble ensemble_from_json(const json& payload);
json certificate_to_json(const BoundCertificate& cert);

// Scalar formatted to 12 significant digits (the printing convention for all
// user-facing numbers).
std::string format_significant(double v);

// ---- scenarios --------------------------------------------------------------
//
// A scenario file is {"kind": ..., "seed": ..., "payload": {...}} with kind
// one of: kantorovich, envelope, certify, ratio, difference, algebra, tail.
struct Scenario {
  std::string kind;
  uint64_t seed = 0;
  json payload;
};

Scenario scenario_from_json(const json& j);
Scenario scenario_from_file(const std::string& path);

// Report structure:
//   {"version", "kind", "seed", "scenario": <payload echo>,
//    "results": [...], "summary": {"pass", "fail", "holds"}}
// Reports are deterministic: same scenario + seed gives byte-identical JSON.
struct RunResult {
  json report;
  int pass = 0;
  int fail = 0;
  bool holds() const { return fail == 0; }
};

// Runs one scenario.  Throws ValidationError (or json exceptions) for
// malformed payloads; other ToolkitError subclasses signal mathematically
// inadmissible inputs and should be reported as certification failures.
RunResult run_scenario(const Scenario& sc, double tol_scale = 1.0);

// Runs every *.json scenario in a directory (sorted by filename) and
// aggregates.  Exit-code semantics are left to the caller: per-file status
// strings are recorded in the report ("ok", "failed", "error:<message>",
// "schema:<message>").
struct SuiteResult {
  json report;
  int scenarios_passed = 0;
  int scenarios_failed = 0;  // certificate failures or math errors
  int scenarios_schema = 0;  // malformed files
};

SuiteResult run_suite_dir(const std::string& dir, double tol_scale = 1.0);

// Writes via a temporary file in the same directory plus rename, so readers
// never observe a half-written report.
void write_text_atomic(const std::string& path, const std::string& text);
void write_json_atomic(const std::string& path, const json& j);

}  // namespace opjensen
