#ifndef GSCBEAM_CSV_HPP
#define GSCBEAM_CSV_HPP

#include <string>
#include <vector>

namespace gscbeam {

// floating point with 9 significant digits ("%.9g")
std::string format_g9(double x);

// Rectangular table with the owning experiment id and config fingerprint
// embedded as leading comment lines, so tables from different resolved
// configs are never compared by accident.
struct CsvTable {
  std::string experiment_id;
  std::string fingerprint;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_string() const;
  void write(const std::string& path) const;

  static CsvTable from_string(const std::string& text);
  static CsvTable read(const std::string& path);
};

// throws std::invalid_argument when the fingerprints differ
void require_same_fingerprint(const CsvTable& a, const CsvTable& b);

}  // namespace gscbeam

#endif
