#include "gt/harness/tables.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "gt/binary_tree.hpp"
#include "gt/core/split.hpp"
#include "gt/counting.hpp"
#include "gt/deferral.hpp"

namespace gt {

namespace {

constexpr std::pair<unsigned, double> kIdentify[] = {
    {2, 3.427051},     {3, 5.917763},     {4, 8.520000},     {5, 11.147797},    {6, 13.780589},
    {7, 16.413785},    {8, 19.046426},    {9, 21.678383},    {10, 24.309752},   {20, 50.617127},
    {30, 76.926328},   {40, 103.234985},  {50, 129.543603},  {100, 261.087360}, {200, 524.174671},
    {300, 787.262001}, {400, 1050.349326}, {500, 1313.436665}, {800, 2102.698664}, {1000, 2628.873328}};

// Published upper bounds on P_0.75(k).
constexpr std::pair<unsigned, double> kOccupancy075[] = {
    {0, 0.2636}, {1, 0.3515}, {2, 0.2344}, {6, 0.0021}, {7, 0.0004}};

TableRow row(std::string table, std::string name, double computed, std::optional<double> printed = {}) {
  TableRow r{std::move(table), std::move(name), computed, printed, std::nullopt};
  if (printed) r.abs_diff = std::fabs(computed - *printed);
  return r;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8f", v);
  return buf;
}

}  // namespace

std::vector<TableRow> compute_tables() {
  std::vector<TableRow> rows;

  const auto e = expected_tests_table(SplitConstants::p2, 1000);
  for (auto [d, printed] : kIdentify) rows.push_back(row("identify", "E_" + std::to_string(d), e[d], printed));

  const DeferralTables dt = deferral_tables(0.479);
  for (unsigned k = 2; k <= 7; ++k) rows.push_back(row("deferral", "E_" + std::to_string(k), dt.e[k]));
  for (unsigned k = 3; k <= 6; ++k) rows.push_back(row("deferral", "D_" + std::to_string(k), dt.d[k]));
  const TotalEstimate de = expected_total_estimate(0.8, 0.479);
  rows.push_back(row("deferral", "tests_per_defective", de.per_defective, 2.054));
  rows.push_back(row("deferral", "truncated_mass", de.truncated_mass));

  const auto ct = counting_tables(0.4715);
  for (unsigned k = 2; k <= 6; ++k) rows.push_back(row("counting", "E_" + std::to_string(k), ct[k]));
  const TotalEstimate ce = counting_total_estimate(0.58, 0.4715);
  rows.push_back(row("counting", "tests_per_defective", ce.per_defective, 1.896));
  rows.push_back(row("counting", "truncated_mass", ce.truncated_mass));

  for (double s : {0.58, 0.75, 0.8}) {
    for (unsigned k = 0; k <= 7; ++k) {
      std::optional<double> printed;
      if (s == 0.75) {
        for (auto [kk, v] : kOccupancy075) {
          if (kk == k) printed = v;
        }
      }
      char name[32];
      std::snprintf(name, sizeof name, "P_%.2f(%u)", s, k);
      rows.push_back(row("occupancy", name, bucket_occupancy(k, s), printed));
    }
  }

  rows.push_back(row("split_root", "p2", solve_split_root(2), SplitConstants::p2));
  rows.push_back(row("split_root", "p3", solve_split_root(3), SplitConstants::p3));
  rows.push_back(row("split_root", "p4", solve_split_root(4), SplitConstants::p4));
  return rows;
}

void emit_tables(std::ostream& out) {
  out << "table,name,computed,printed,abs_diff\n";
  for (const auto& r : compute_tables()) {
    out << r.table << ',' << r.name << ',' << fmt(r.computed) << ',' << (r.printed ? fmt(*r.printed) : "") << ','
        << (r.abs_diff ? fmt(*r.abs_diff) : "") << '\n';
  }
}

}  // namespace gt
