#include "gscbeam/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gscbeam {

std::string format_g9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size())
    throw std::invalid_argument("CsvTable: row width does not match the header");
  rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  out << "# experiment=" << experiment_id << "\n";
  out << "# fingerprint=" << fingerprint << "\n";
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ",";
    out << header[i];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << row[i];
    }
    out << "\n";
  }
  return out.str();
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("CsvTable: cannot open " + path + " for writing");
  out << to_string();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

CsvTable CsvTable::from_string(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# experiment=", 0) == 0) {
      table.experiment_id = line.substr(13);
      continue;
    }
    if (line.rfind("# fingerprint=", 0) == 0) {
      table.fingerprint = line.substr(14);
      continue;
    }
    if (line[0] == '#') continue;
    if (!header_seen) {
      table.header = split_csv_line(line);
      header_seen = true;
    } else {
      table.add_row(split_csv_line(line));
    }
  }
  if (!header_seen) throw std::invalid_argument("CsvTable: no header row found");
  return table;
}

CsvTable CsvTable::read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("CsvTable: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

void require_same_fingerprint(const CsvTable& a, const CsvTable& b) {
  if (a.fingerprint != b.fingerprint)
    throw std::invalid_argument("CsvTable: fingerprint mismatch (" + a.fingerprint + " vs " +
                                b.fingerprint + "); tables come from different configs");
}

}  // namespace gscbeam
