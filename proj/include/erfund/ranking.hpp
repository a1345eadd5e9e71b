#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "erfund/aggregation.hpp"

namespace erfund {

// One project's scores under both methods, with 1-based dense ranks.
// Equal scores share a rank and a tie-group id; ties are surfaced, never
// silently broken.
struct ProjectScore {
    std::string project_id;
    double y = 0.0; // ER funding probability
    double x = 0.0; // additive baseline score
    int rank_y = 0;
    int rank_x = 0;
    int tie_group_y = 0;
    int tie_group_x = 0;
    std::optional<std::string> outcome;
};

enum class RankKey { kY, kX };

// Numeric scores for the grades of one criterion, parallel vectors.
struct GradeScale {
    std::vector<std::string> grades;
    std::vector<double> scores;
};

struct TopKReport {
    int k = 0;
    int funded = 0;
    int unfunded = 0;
    int undifferentiated = 0;
};

struct HistogramBin {
    double lower = 0.0; // inclusive lower edge
    long funded = 0;
    long unfunded = 0;
};

// Plot-ready histogram: bins of equal width anchored at the minimum score,
// empty bins included, funded and unfunded counted separately.
struct HistogramData {
    double origin = 0.0;
    double bin_width = 0.0;
    std::vector<HistogramBin> bins;
};

// Additive baseline: per criterion, the mean of the experts' mapped grade
// scores; the per-criterion means are summed. Every criterion in `scales`
// must carry at least one assessment.
double additive_score(std::span<const Assessment> project_assessments,
                      const std::map<std::string, GradeScale>& scales);

// Sort descending by the chosen key, filling dense 1-based ranks and
// tie-group ids for that key. Within a tie group the order is by project id.
std::vector<ProjectScore> rank(std::vector<ProjectScore> scores, RankKey key);

// Actual outcomes of the top k slots of a ranked list. A slot is
// undifferentiated when its tie group straddles the k boundary, so
// membership in the top k is not determined by scores alone; such slots are
// counted neither funded nor unfunded. `funded_label` is the outcome that
// counts as funded.
TopKReport topk_outcomes(std::span<const ProjectScore> ranked, int k, RankKey key,
                         const std::string& funded_label);

HistogramData histogram(std::span<const ProjectScore> scores, double bin_width, RankKey key,
                        const std::string& funded_label);

} // namespace erfund
