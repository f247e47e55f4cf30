#include "fracdual/report/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace fracdual {
namespace {

using nlohmann::ordered_json;

// JSON has no NaN/inf literals; map them to sentinel strings so a degenerate
// measurement still produces a parseable report.
ordered_json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ordered_json check_to_json(const CheckRecord& c) {
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : c.params) params[key] = json_number(value);
  ordered_json j = ordered_json::object();
  j["name"] = c.name;
  j["params"] = std::move(params);
  j["measured"] = json_number(c.measured);
  j["tolerance"] = json_number(c.tolerance);
  j["passed"] = c.passed;
  j["paper_anchor"] = c.anchor;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

}  // namespace

void VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool VerificationReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

int VerificationReport::failed_count() const {
  int n = 0;
  for (const auto& c : checks) {
    if (!c.passed) ++n;
  }
  return n;
}

std::string report_to_json(const std::map<std::string, double>& config_numbers,
                           const std::map<std::string, std::string>& config_strings,
                           const std::vector<CheckRecord>& checks) {
  ordered_json config = ordered_json::object();
  for (const auto& [key, value] : config_numbers) config[key] = json_number(value);
  for (const auto& [key, value] : config_strings) config[key] = value;

  ordered_json check_array = ordered_json::array();
  int passed = 0;
  for (const auto& c : checks) {
    check_array.push_back(check_to_json(c));
    if (c.passed) ++passed;
  }

  ordered_json root = ordered_json::object();
  root["config"] = std::move(config);
  root["checks"] = std::move(check_array);
  root["summary"] = {{"total", static_cast<int>(checks.size())},
                     {"passed", passed},
                     {"failed", static_cast<int>(checks.size()) - passed}};
  return root.dump(2) + "\n";
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    const std::string& cell = cells[i];
    if (cell.find_first_of(",\"\n") != std::string::npos) {
      row += '"';
      for (char c : cell) {
        if (c == '"') row += '"';
        row += c;
      }
      row += '"';
    } else {
      row += cell;
    }
  }
  row += '\n';
  return row;
}

}  // namespace fracdual
