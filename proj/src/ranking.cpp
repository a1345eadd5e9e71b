#include "erfund/ranking.hpp"

#include <algorithm>
#include <cmath>

#include "erfund/errors.hpp"
#include "erfund/strings.hpp"

namespace erfund {

namespace {

double key_of(const ProjectScore& s, RankKey key) {
    return key == RankKey::kY ? s.y : s.x;
}

bool is_funded(const ProjectScore& s, const std::string& funded_label) {
    if (!s.outcome) {
        throw ValidationError("project '" + s.project_id + "' has no outcome");
    }
    return to_lower(trim(*s.outcome)) == to_lower(trim(funded_label));
}

} // namespace

double additive_score(std::span<const Assessment> project_assessments,
                      const std::map<std::string, GradeScale>& scales) {
    std::map<std::string, std::pair<double, long>> sums; // criterion -> (score sum, count)
    for (const Assessment& a : project_assessments) {
        auto scale = scales.find(a.criterion_id);
        if (scale == scales.end()) {
            throw ValidationError("no grade scale for criterion '" + a.criterion_id + "'");
        }
        const auto idx = find_label(scale->second.grades, a.grade);
        if (!idx) {
            throw ValidationError("unknown grade '" + a.grade + "' for criterion '" +
                                  a.criterion_id + "'");
        }
        auto& [sum, count] = sums[a.criterion_id];
        sum += scale->second.scores.at(static_cast<std::size_t>(*idx));
        ++count;
    }
    double x = 0.0;
    for (const auto& [criterion_id, scale] : scales) {
        auto it = sums.find(criterion_id);
        if (it == sums.end()) {
            throw ValidationError("no assessments on criterion '" + criterion_id + "'");
        }
        x += it->second.first / static_cast<double>(it->second.second);
    }
    return x;
}

std::vector<ProjectScore> rank(std::vector<ProjectScore> scores, RankKey key) {
    if (scores.empty()) {
        throw ValidationError("cannot rank an empty project set");
    }
    std::sort(scores.begin(), scores.end(), [key](const ProjectScore& a, const ProjectScore& b) {
        const double ka = key_of(a, key), kb = key_of(b, key);
        if (ka != kb) return ka > kb;
        return a.project_id < b.project_id;
    });
    int current_rank = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (i == 0 || key_of(scores[i], key) != key_of(scores[i - 1], key)) ++current_rank;
        if (key == RankKey::kY) {
            scores[i].rank_y = current_rank;
            scores[i].tie_group_y = current_rank;
        } else {
            scores[i].rank_x = current_rank;
            scores[i].tie_group_x = current_rank;
        }
    }
    return scores;
}

TopKReport topk_outcomes(std::span<const ProjectScore> ranked, int k, RankKey key,
                         const std::string& funded_label) {
    const int n = static_cast<int>(ranked.size());
    if (k < 1 || k > n) {
        throw ValidationError("top-k size " + std::to_string(k) + " out of range for " +
                              std::to_string(n) + " projects");
    }
    for (std::size_t i = 1; i < ranked.size(); ++i) {
        if (key_of(ranked[i - 1], key) < key_of(ranked[i], key)) {
            throw ValidationError("topk_outcomes expects a list ranked by the given key");
        }
    }
    TopKReport report;
    report.k = k;
    for (int i = 0; i < k; ++i) {
        // The slot's tie group straddles the boundary when the same score
        // continues past position k.
        const bool straddles =
            k < n && key_of(ranked[static_cast<std::size_t>(i)], key) ==
                         key_of(ranked[static_cast<std::size_t>(k)], key);
        if (straddles) {
            ++report.undifferentiated;
        } else if (is_funded(ranked[static_cast<std::size_t>(i)], funded_label)) {
            ++report.funded;
        } else {
            ++report.unfunded;
        }
    }
    return report;
}

HistogramData histogram(std::span<const ProjectScore> scores, double bin_width, RankKey key,
                        const std::string& funded_label) {
    if (scores.empty()) {
        throw ValidationError("cannot build a histogram from an empty project set");
    }
    if (!(bin_width > 0.0)) {
        throw ValidationError("histogram bin width must be positive");
    }
    double lo = key_of(scores.front(), key), hi = lo;
    for (const ProjectScore& s : scores) {
        lo = std::min(lo, key_of(s, key));
        hi = std::max(hi, key_of(s, key));
    }
    const auto bin_index = [&](double v) {
        double t = (v - lo) / bin_width;
        long idx = static_cast<long>(std::floor(t));
        // Scores sitting a rounding error below a bin edge belong to the
        // upper bin.
        if (static_cast<double>(idx + 1) - t < 1e-9) ++idx;
        return idx;
    };
    HistogramData data;
    data.origin = lo;
    data.bin_width = bin_width;
    data.bins.resize(static_cast<std::size_t>(bin_index(hi)) + 1);
    for (std::size_t i = 0; i < data.bins.size(); ++i) {
        data.bins[i].lower = lo + static_cast<double>(i) * bin_width;
    }
    for (const ProjectScore& s : scores) {
        auto& bin = data.bins[static_cast<std::size_t>(bin_index(key_of(s, key)))];
        is_funded(s, funded_label) ? ++bin.funded : ++bin.unfunded;
    }
    return data;
}

} // namespace erfund
