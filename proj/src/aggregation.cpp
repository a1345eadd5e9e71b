#include "erfund/aggregation.hpp"

#include <vector>

#include "erfund/errors.hpp"

namespace erfund {

Evidence expert_evidence(const Assessment& a, const BeliefMatrix& beliefs, double reliability,
                         ExpertWeightMode mode, double reliability_sum) {
    BeliefDistribution bd = grade_to_bd(beliefs, a.grade);
    double wr = reliability;
    if (mode == ExpertWeightMode::kNormalizedReliability) {
        if (reliability_sum <= 0.0) {
            throw ComputationError("no effective evidence: reliabilities sum to zero");
        }
        wr = reliability / reliability_sum;
    }
    return Evidence(std::move(bd), wr, wr);
}

BeliefDistribution aggregate_criterion(std::span<const Assessment> assessments,
                                       const BeliefMatrix& beliefs,
                                       const std::map<std::string, double>& reliabilities,
                                       ExpertWeightMode mode) {
    if (assessments.empty()) {
        throw ValidationError("no assessments to aggregate for criterion '" +
                              beliefs.criterion_id() + "'");
    }
    double reliability_sum = 0.0;
    for (const Assessment& a : assessments) {
        auto it = reliabilities.find(a.expert_id);
        if (it == reliabilities.end()) {
            throw ValidationError("no reliability for expert '" + a.expert_id + "' on project '" +
                                  a.project_id + "'");
        }
        reliability_sum += it->second;
    }
    if (reliability_sum <= 0.0) {
        throw ComputationError("no effective evidence: all reliabilities are zero for criterion '" +
                               beliefs.criterion_id() + "'");
    }
    std::vector<Evidence> items;
    items.reserve(assessments.size());
    for (const Assessment& a : assessments) {
        items.push_back(
            expert_evidence(a, beliefs, reliabilities.at(a.expert_id), mode, reliability_sum));
    }
    return combine(items);
}

BeliefDistribution aggregate_project(const std::map<std::string, BeliefDistribution>& criterion_bds,
                                     const std::map<std::string, double>& criterion_weights) {
    if (criterion_bds.empty()) {
        throw ValidationError("no criterion distributions to aggregate");
    }
    double total_weight = 0.0;
    for (const auto& [criterion_id, bd] : criterion_bds) {
        auto it = criterion_weights.find(criterion_id);
        if (it == criterion_weights.end()) {
            throw ValidationError("no weight configured for criterion '" + criterion_id + "'");
        }
        if (it->second < 0.0) {
            throw ValidationError("criterion weight must be nonnegative for '" + criterion_id + "'");
        }
        total_weight += it->second;
    }
    if (total_weight <= 0.0) {
        throw ValidationError("criterion weights sum to zero");
    }
    std::vector<Evidence> items;
    items.reserve(criterion_bds.size());
    for (const auto& [criterion_id, bd] : criterion_bds) {
        const double w = criterion_weights.at(criterion_id) / total_weight;
        items.emplace_back(bd, w, w);
    }
    return combine(items);
}

ProjectEvaluation evaluate_project(std::span<const Assessment> assessments,
                                   const std::map<std::string, BeliefMatrix>& belief_matrices,
                                   const std::map<std::string, double>& reliabilities,
                                   const AggregationConfig& config) {
    if (assessments.empty()) {
        throw ValidationError("project has no assessments");
    }
    const std::string& project_id = assessments.front().project_id;
    std::map<std::string, std::vector<Assessment>> by_criterion;
    for (const Assessment& a : assessments) {
        if (a.project_id != project_id) {
            throw ValidationError("assessments of more than one project passed to evaluate_project");
        }
        by_criterion[a.criterion_id].push_back(a);
    }
    std::map<std::string, BeliefDistribution> per_criterion;
    for (const auto& [criterion_id, group] : by_criterion) {
        auto matrix = belief_matrices.find(criterion_id);
        if (matrix == belief_matrices.end()) {
            throw ValidationError("no belief matrix for criterion '" + criterion_id + "'");
        }
        per_criterion.emplace(
            criterion_id,
            aggregate_criterion(group, matrix->second, reliabilities, config.expert_weight_mode));
    }
    BeliefDistribution overall = aggregate_project(per_criterion, config.criterion_weights);
    const double y = overall.singleton_mass(0);
    return ProjectEvaluation{project_id, std::move(per_criterion), std::move(overall), y};
}

} // namespace erfund
