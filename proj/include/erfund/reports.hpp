#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "erfund/config.hpp"
#include "erfund/csv.hpp"
#include "erfund/ranking.hpp"
#include "erfund/reliability.hpp"

namespace erfund {

struct ReportRow {
    std::string project_id;
    double y = 0.0;
    double x = 0.0;
    int rank_y = 0;
    int rank_x = 0;
    int tie_group_y = 0;
    int tie_group_x = 0;
    // Singleton beliefs in frame order, per criterion and overall.
    std::map<std::string, std::vector<double>> criterion_belief;
    std::vector<double> overall_belief;
    std::optional<std::string> outcome;
};

struct Report {
    std::vector<std::string> frame_labels;
    std::string config_digest;
    std::string expert_weight_mode;
    std::string calibration_rounding;
    long history_records = 0;
    long assessment_records = 0;
    std::vector<ReportRow> rows; // one per evaluated project
};

struct CalibrationSet {
    std::vector<LikelihoodMatrix> likelihood_matrices;
    std::vector<BeliefMatrix> belief_matrices;
};

// Lossless JSON forms; parse(emit(x)) == x including every double bit.
std::string calibration_to_json_text(const CalibrationSet& set);
CalibrationSet calibration_from_json_text(const std::string& text);
std::string profiles_to_json_text(const std::vector<ReliabilityProfile>& profiles,
                                  const std::vector<ConfusionMatrix>& matrices);
std::vector<std::pair<ReliabilityProfile, ConfusionMatrix>> profiles_from_json_text(
    const std::string& text);
std::string report_to_json_text(const Report& report);
Report report_from_json_text(const std::string& text);

struct RunInputs {
    std::string out_dir;
    std::optional<std::string> history_path;
    std::optional<std::string> assessments_path;
    std::optional<std::string> reliabilities_path;
    int top_k = 20;
    double bin_width = 0.2;
};

struct RunResult {
    std::optional<Report> report; // evaluate / rank / compare
    std::vector<std::string> files_written;
};

// Commands: calibrate, reliability, evaluate, rank, compare. Each writes
// deterministic CSV (values at 4 decimal places) plus a full-precision JSON
// twin into `out_dir`. Raised ValidationError / ComputationError map to CLI
// exit codes 1 / 2.
RunResult run_command(const std::string& command, const PipelineConfig& config,
                      const RunInputs& inputs);

} // namespace erfund
