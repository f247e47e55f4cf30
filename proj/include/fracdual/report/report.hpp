#pragma once

#include <map>
#include <string>
#include <vector>

namespace fracdual {

// One verification check: what was measured, against which tolerance, and the
// formula-level claim it certifies.  `params` holds the numeric configuration
// (alpha, s, n, grid sizes, ...) in a sorted map so serialization is stable.
struct CheckRecord {
  std::string name;
  std::map<std::string, double> params;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string anchor;  // human-readable statement of the identity under test
  std::string note;    // optional caveats (conditional convergence, resolution flags)
};

// A named bundle of check records with an all-pass summary.
struct VerificationReport {
  std::string name;
  std::vector<CheckRecord> checks;

  void add(CheckRecord record) { checks.push_back(std::move(record)); }
  void merge(const VerificationReport& other);
  bool passed() const;
  int failed_count() const;
};

// Serializes a report set to the JSON schema
//   {config: {...}, checks: [{name, params, measured, tolerance, passed,
//    paper_anchor, note?}], summary: {total, passed, failed}}.
// `config` carries the run configuration (numeric values keyed by name plus
// free-form string entries).  Output ends with a newline; key order is fixed.
std::string report_to_json(const std::map<std::string, double>& config_numbers,
                           const std::map<std::string, std::string>& config_strings,
                           const std::vector<CheckRecord>& checks);

// CSV helpers: 12 significant digits, comma separation, LF line endings.
std::string format_number(double v);
std::string csv_row(const std::vector<std::string>& cells);

}  // namespace fracdual
