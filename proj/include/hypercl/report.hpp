#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hypercl/errors.hpp"

namespace hypercl {

// ---------------------------------------------------------------------------
// Report: the uniform result object every audit returns.  Holds pass/fail,
// named scalar metrics (ordered, so emission is deterministic), free-form
// notes, and an optional table for CSV output.
// ---------------------------------------------------------------------------
struct Report {
  std::string name;
  bool pass = true;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> notes;

  std::vector<std::string> columns;        // CSV header
  std::vector<std::vector<double>> rows;   // CSV body

  void metric(const std::string& key, double value) { metrics.emplace_back(key, value); }

  double get(const std::string& key) const {
    for (const auto& [k, v] : metrics)
      if (k == key) return v;
    throw Error("Report '" + name + "': no metric named '" + key + "'");
  }

  bool has(const std::string& key) const {
    for (const auto& [k, v] : metrics)
      if (k == key) return true;
    return false;
  }

  void note(std::string s) { notes.push_back(std::move(s)); }

  // Merge a sub-report: AND the pass flags, prefix its metrics/notes.
  void absorb(const Report& sub);
};

// RFC 4180 CSV: CRLF line endings, quoting only where required, '.' decimal
// separator, 17 significant digits.  Deterministic bytes for fixed input.
std::string to_csv(const std::vector<std::string>& columns,
                   const std::vector<std::vector<double>>& rows);

// JSON summary (ordered keys) of one or more reports.
std::string to_json(const std::vector<Report>& reports);

// Write a file, creating parent directories.
void write_file(const std::string& path, const std::string& content);

}  // namespace hypercl
