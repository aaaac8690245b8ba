#include "gt/harness/report.hpp"

#include <cstdio>
#include <optional>

namespace gt {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::vector<std::string> row(const ExperimentResult& r) {
  const ExperimentConfig& c = r.config;
  return {c.algorithm,
          std::to_string(c.n),
          std::to_string(c.d),
          std::to_string(c.trials),
          std::to_string(c.seed),
          fmt(c.p),
          fmt(c.s),
          std::to_string(c.a),
          std::to_string(c.c),
          fmt(c.cap),
          c.mode ? std::string(to_string(*c.mode)) : std::string(),
          fmt(r.mean_tests),
          fmt(r.stderr_tests),
          std::to_string(r.p50),
          std::to_string(r.p90),
          std::to_string(r.p99),
          std::to_string(r.max),
          fmt(r.mean_per_d),
          fmt(r.analytic),
          r.analytic_label,
          fmt(r.info_lower_bound),
          fmt(r.estimator_factor2_rate),
          fmt(r.throughput),
          fmt(r.mean_rounds),
          fmt(r.mean_messages),
          std::to_string(r.failures)};
}

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "algorithm",   "n",      "d",       "trials",     "seed",           "p",
      "s",           "a",      "c",       "cap",        "mode",           "mean_tests",
      "stderr",      "p50",    "p90",     "p99",        "max",            "mean_per_d",
      "analytic",    "analytic_label",    "info_lower_bound",             "estimator_factor2_rate",
      "throughput",  "mean_rounds",       "mean_messages",                "failures"};
  return cols;
}

void write_csv(std::ostream& out, const std::vector<ExperimentResult>& results) {
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : results) {
    const auto cells = row(r);
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  }
}

nlohmann::json report_json(const std::vector<ExperimentResult>& results) {
  const auto& cols = report_columns();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : results) {
    const auto cells = row(r);
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const std::string& col = cols[i];
      if (cells[i].empty()) {
        obj[col] = nullptr;
      } else if (col == "algorithm" || col == "analytic_label" || col == "mode") {
        obj[col] = cells[i];
      } else {
        obj[col] = nlohmann::json::parse(cells[i]);
      }
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

void write_json(std::ostream& out, const std::vector<ExperimentResult>& results) {
  out << report_json(results).dump(2) << '\n';
}

}  // namespace gt
