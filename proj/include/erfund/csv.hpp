#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "erfund/aggregation.hpp"
#include "erfund/calibration.hpp"
#include "erfund/config.hpp"
#include "erfund/reliability.hpp"

namespace erfund {

// Reliability values supplied directly instead of being derived from track
// records. Rows with project_id "*" apply to the expert everywhere and in
// both directions.
struct ReliabilityOverrides {
    std::map<std::pair<std::string, std::string>, double> per_project; // (project, expert) -> r
    std::map<std::string, ReliabilityProfile> profiles; // expert -> profile-wide value
};

// Header: project_id,expert_id,criterion_id,grade,outcome. Grades and
// outcomes are validated against the config and canonicalized to the
// configured spelling; a project's outcome must be consistent across rows.
// Errors carry file and line.
std::vector<HistoryRecord> parse_history(const std::string& path, const PipelineConfig& config);

// Header: project_id,expert_id,criterion_id,grade. Duplicate
// (project, expert, criterion) rows are rejected.
std::vector<Assessment> parse_assessments(const std::string& path, const PipelineConfig& config);

// Header: project_id,expert_id,reliability, values in [0,1].
ReliabilityOverrides parse_reliability_overrides(const std::string& path);

} // namespace erfund
