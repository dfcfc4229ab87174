#pragma once

#include <string>
#include <vector>

#include "superclose/study.hpp"

namespace superclose {

/// One printed column of a published convergence table and the tolerances
/// used to compare against it.
struct GoldenColumn {
  std::string header;  ///< text header, e.g. "L2 (r=2)"
  std::string key;     ///< CSV label, e.g. "L2_r2"
  std::size_t study = 0;
  std::size_t norm = 0;
  std::vector<double> printed;  ///< published values, one per level
  /// Relative tolerance on values; 0 disables the value check.
  double value_tolerance = 0.0;
  /// Levels whose values are compared; empty means every level.
  std::vector<int> checked_levels;
  double order_target = 0.0;
  double order_tolerance = 0.0;
};

struct TableSpec {
  int id = 0;
  std::string caption;
  std::vector<StudyConfig> studies;
  std::vector<GoldenColumn> columns;
  double runtime_limit_seconds = 0.0;  ///< 0 disables the check
};

inline constexpr int kTableCount = 6;

/// The six shipped tables. Throws invalid_argument for ids outside 1..6.
const TableSpec& table_spec(int id);

}  // namespace superclose
