#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "erfund/aggregation.hpp"
#include "erfund/frame.hpp"
#include "erfund/ranking.hpp"

namespace erfund {

struct CriterionSpec {
    std::string id;
    std::string name; // optional descriptive name
    std::vector<std::string> grades; // ascending order
    double weight = 1.0;
    std::vector<double> grade_scores; // additive baseline mapping, parallel to grades
    bool recommendation = false; // source of the reliability direction
    std::vector<std::string> fund_grades; // grades counted as a Fund recommendation
};

// What to do when a project's expert has neither an override nor a usable
// track record.
enum class DefaultReliabilityPolicy { kError, kFixed };

struct PipelineConfig {
    std::vector<std::string> frame_labels; // first label is the funded outcome
    std::vector<CriterionSpec> criteria;
    ExpertWeightMode expert_weight_mode = ExpertWeightMode::kRawReliability;
    Rounding calibration_rounding = Rounding::kNone;
    DefaultReliabilityPolicy default_reliability_policy = DefaultReliabilityPolicy::kError;
    double default_reliability = 0.0;

    void validate() const;
    Frame frame() const { return Frame(frame_labels); }
    const CriterionSpec* find_criterion(const std::string& id_or_alias) const;
    // The single criterion whose grades carry the fund / not-fund direction,
    // nullptr when none is marked.
    const CriterionSpec* recommendation_criterion() const;
    AggregationConfig aggregation() const;
    std::map<std::string, GradeScale> grade_scales() const;
    // Stable fingerprint of the effective configuration, for report metadata.
    std::string digest() const;
};

// The case-study preset: binary Funded/Unfunded frame, criteria C1
// (Poor..Excellent, weight 2, scores 1..4) and C2 (Not fund..Fund with
// priority, weight 1, scores 0..2, recommendation criterion).
PipelineConfig nsfc_case_study_config();

// Load a config from a JSON file, or return the named built-in preset
// ("nsfc-case-study").
PipelineConfig load_config(const std::string& path_or_preset);

PipelineConfig config_from_json_text(const std::string& text, const std::string& origin);
std::string config_to_json_text(const PipelineConfig& config);

} // namespace erfund
