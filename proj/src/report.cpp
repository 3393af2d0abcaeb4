#include "hypercl/report.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hypercl/util.hpp"

namespace hypercl {

void Report::absorb(const Report& sub) {
  pass = pass && sub.pass;
  for (const auto& [k, v] : sub.metrics) metrics.emplace_back(sub.name + "." + k, v);
  for (const auto& n : sub.notes) notes.push_back(sub.name + ": " + n);
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_csv(const std::vector<std::string>& columns,
                   const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += csv_quote(columns[i]);
  }
  out += "\r\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

std::string to_json(const std::vector<Report>& reports) {
  nlohmann::ordered_json root;
  bool all_pass = true;
  for (const auto& r : reports) all_pass = all_pass && r.pass;
  root["pass"] = all_pass;
  auto& list = root["reports"];
  list = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json jr;
    jr["name"] = r.name;
    jr["pass"] = r.pass;
    auto& jm = jr["metrics"];
    jm = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.metrics) jm[k] = v;
    if (!r.notes.empty()) jr["notes"] = r.notes;
    list.push_back(std::move(jr));
  }
  return root.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("write_file: cannot open " + path);
  out << content;
}

}  // namespace hypercl
