#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gt {

struct TableRow {
  std::string table;  // identify, deferral, counting, occupancy, split_root
  std::string name;
  double computed = 0;
  std::optional<double> printed;  // published value, when there is one
  std::optional<double> abs_diff;
};

/// Identify E_d at p2 (d up to 1000), the deferral and counting per-bucket tables,
/// P_s(k) at s = 0.58, 0.75, 0.8 and the split roots.
std::vector<TableRow> compute_tables();

/// CSV: table,name,computed,printed,abs_diff.
void emit_tables(std::ostream& out);

}  // namespace gt
