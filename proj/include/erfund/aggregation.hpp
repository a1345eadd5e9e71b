#pragma once

#include <map>
#include <span>
#include <string>

#include "erfund/calibration.hpp"
#include "erfund/er_rule.hpp"

namespace erfund {

// One expert's grade for one project on one criterion.
struct Assessment {
    std::string project_id;
    std::string expert_id;
    std::string criterion_id;
    std::string grade;
};

// How an expert's reliability becomes the evidence weight. Raw mode sets
// w = r as given; normalized mode rescales the reliabilities of the
// project's experts on a criterion to sum to 1 and sets w = r to the
// rescaled value.
enum class ExpertWeightMode { kRawReliability, kNormalizedReliability };

struct AggregationConfig {
    std::map<std::string, double> criterion_weights;
    ExpertWeightMode expert_weight_mode = ExpertWeightMode::kRawReliability;
    Rounding calibration_rounding = Rounding::kNone;
};

// Turn an assessment into a weighted piece of evidence. `reliability_sum`
// is the normalization denominator for kNormalizedReliability (the sum of
// reliabilities of the project's experts on this criterion); it is ignored
// in raw mode.
Evidence expert_evidence(const Assessment& a, const BeliefMatrix& beliefs, double reliability,
                         ExpertWeightMode mode, double reliability_sum = 1.0);

// Combine the experts' assessments of one project on one criterion.
// `reliabilities` maps expert id to the reliability applicable to this
// project. Zero-reliability experts contribute vacuous evidence and are
// dropped; if nobody remains the combination fails with "no effective
// evidence".
BeliefDistribution aggregate_criterion(std::span<const Assessment> assessments,
                                       const BeliefMatrix& beliefs,
                                       const std::map<std::string, double>& reliabilities,
                                       ExpertWeightMode mode);

// Combine per-criterion distributions into the overall distribution. The
// criterion weights are normalized to sum to 1 and each criterion enters
// with w = r equal to its normalized weight.
BeliefDistribution aggregate_project(const std::map<std::string, BeliefDistribution>& criterion_bds,
                                     const std::map<std::string, double>& criterion_weights);

struct ProjectEvaluation {
    std::string project_id;
    std::map<std::string, BeliefDistribution> per_criterion;
    BeliefDistribution overall;
    // Combined belief on the first frame hypothesis (the funded outcome).
    double funding_probability = 0.0;
};

// Full two-stage pipeline for one project: experts per criterion, then
// criteria into the overall distribution. `assessments` must all belong to
// one project; criteria without any assessment contribute nothing and the
// weights are renormalized over the criteria present.
ProjectEvaluation evaluate_project(std::span<const Assessment> assessments,
                                   const std::map<std::string, BeliefMatrix>& belief_matrices,
                                   const std::map<std::string, double>& reliabilities,
                                   const AggregationConfig& config);

} // namespace erfund
