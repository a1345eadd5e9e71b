#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "erfund/belief.hpp"
#include "erfund/frame.hpp"

namespace erfund {

// One historical review: an expert's grade for a project on one criterion,
// together with the project's eventual funding outcome.
struct HistoryRecord {
    std::string project_id;
    std::string expert_id;
    std::string criterion_id;
    std::string grade;
    std::string outcome;
};

// Assessment counts per (outcome hypothesis, grade) for one criterion.
class CountTable {
public:
    CountTable(std::string criterion_id, Frame frame, std::vector<std::string> grades,
               std::vector<std::vector<long>> counts);

    const std::string& criterion_id() const { return criterion_id_; }
    const Frame& frame() const { return frame_; }
    const std::vector<std::string>& grades() const { return grades_; }
    long count(int hypothesis, int grade) const;
    long row_total(int hypothesis) const { return row_totals_.at(static_cast<std::size_t>(hypothesis)); }
    long col_total(int grade) const { return col_totals_.at(static_cast<std::size_t>(grade)); }
    long total() const { return total_; }

private:
    std::string criterion_id_;
    Frame frame_;
    std::vector<std::string> grades_;
    std::vector<std::vector<long>> counts_; // [hypothesis][grade]
    std::vector<long> row_totals_;
    std::vector<long> col_totals_;
    long total_ = 0;
};

enum class Rounding { kNone, kFourDecimals };

// Grade likelihoods given each outcome hypothesis: c[i][j] = P(grade j |
// hypothesis i). Rows are normalized counts and sum to 1.
class LikelihoodMatrix {
public:
    LikelihoodMatrix(std::string criterion_id, Frame frame, std::vector<std::string> grades,
                     std::vector<std::vector<double>> entries);

    const std::string& criterion_id() const { return criterion_id_; }
    const Frame& frame() const { return frame_; }
    const std::vector<std::string>& grades() const { return grades_; }
    double at(int hypothesis, int grade) const;
    // Per-hypothesis likelihoods of one grade, in frame order.
    std::vector<double> column(int grade) const;

private:
    std::string criterion_id_;
    Frame frame_;
    std::vector<std::string> grades_;
    std::vector<std::vector<double>> entries_; // [hypothesis][grade]
};

// Column-normalized likelihoods: p[i][j] is the belief that grade j points
// to hypothesis i, so each grade column is a belief distribution over the
// frame. A matrix built with Rounding::kFourDecimals carries entries rounded
// half-up to 4 decimal places, matching printed calibration tables; its
// columns may then miss 1 by up to 0.00005 per hypothesis, and the wider
// tolerance travels with the matrix.
class BeliefMatrix {
public:
    BeliefMatrix(std::string criterion_id, Frame frame, std::vector<std::string> grades,
                 std::vector<std::vector<double>> entries, Rounding rounding = Rounding::kNone);

    const std::string& criterion_id() const { return criterion_id_; }
    const Frame& frame() const { return frame_; }
    const std::vector<std::string>& grades() const { return grades_; }
    Rounding rounding() const { return rounding_; }
    double at(int hypothesis, int grade) const;
    std::vector<double> column(int grade) const;
    double column_sum_tolerance() const;

private:
    std::string criterion_id_;
    Frame frame_;
    std::vector<std::string> grades_;
    std::vector<std::vector<double>> entries_; // [hypothesis][grade]
    Rounding rounding_;
};

// Count every record of the given criterion into an (outcome, grade) table.
// Records of other criteria are ignored. Every hypothesis must end up with
// at least one record; a grade or outcome outside the vocabulary is an error.
CountTable tally(std::span<const HistoryRecord> records, const std::string& criterion_id,
                 const Frame& frame, const std::vector<std::string>& grades);

// c[i][j] = count[i][j] / row_total[i].
LikelihoodMatrix likelihoods(const CountTable& t);

// p[i][j] = c[i][j] / sum_n c[n][j]. A grade never observed under any
// hypothesis has an all-zero column and is reported by name. With
// Rounding::kFourDecimals the normalized entries are rounded half-up to four
// decimal places, reproducing printed calibration tables.
BeliefMatrix beliefs_from_likelihoods(const LikelihoodMatrix& c,
                                      Rounding rounding = Rounding::kNone);

// The grade's column as a singleton-only belief distribution. Grade lookup
// is whitespace-trimmed and case-insensitive.
BeliefDistribution grade_to_bd(const BeliefMatrix& m, std::string_view grade);

} // namespace erfund
