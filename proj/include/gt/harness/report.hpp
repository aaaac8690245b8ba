#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gt/harness/experiment.hpp"

namespace gt {

/// Column order of the CSV report; see docs/report-columns.md.
const std::vector<std::string>& report_columns();

void write_csv(std::ostream& out, const std::vector<ExperimentResult>& results);
/// Array of row objects keyed by report_columns().
nlohmann::json report_json(const std::vector<ExperimentResult>& results);
void write_json(std::ostream& out, const std::vector<ExperimentResult>& results);

}  // namespace gt
