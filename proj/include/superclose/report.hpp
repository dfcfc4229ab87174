#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superclose/study.hpp"

namespace superclose {

/// Library version, e.g. "0.1.0+g8c52cc6".
const char* version_string() noexcept;

struct ReportColumn {
  std::string header;  ///< text table header
  std::string key;     ///< CSV label
  std::vector<double> values;
  std::vector<std::optional<double>> orders;
  std::optional<double> predicted_order;
};

struct ReportCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Rendered result of a table, study, regularity or perturbed-form run.
/// Metadata appears in the text rendering only, never in CSV.
struct Report {
  std::string title;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<int> levels;
  std::vector<double> h_ratios;
  std::vector<ReportColumn> columns;
  std::vector<std::pair<std::string, double>> predictions;
  std::vector<ReportCheck> checks;
  std::vector<std::string> notes;

  std::size_t row_count() const noexcept { return levels.size(); }
  /// True iff every check passed (vacuously true without checks).
  bool passed() const;
};

Report run_table(int id);
Report study_report(const StudyResult& result);
Report regularity_report(const RegularityResult& result);
Report perturbed_form_report(const PerturbedFormResult& result);

/// Aligned text table: values in 5-significant-digit scientific notation,
/// orders with 4 decimals. Metadata first when `with_metadata`.
std::string render_text(const Report& report, bool with_metadata = true);

/// `level,h_ratio,<key>,<key>_order,...`; values with 17 significant digits,
/// empty order fields at level 0, UNIX newlines.
void write_csv(std::ostream& out, const Report& report);
void write_csv_file(const std::string& path, const Report& report);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;
};

/// Inverse of write_csv. Throws parse_error on malformed input.
CsvTable read_csv(std::istream& in);

}  // namespace superclose
