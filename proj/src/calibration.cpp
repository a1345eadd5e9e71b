#include "erfund/calibration.hpp"

#include <cmath>

#include "erfund/errors.hpp"
#include "erfund/strings.hpp"

namespace erfund {

namespace {

void check_dims(const Frame& frame, const std::vector<std::string>& grades,
                std::size_t rows, std::size_t cols_of_first_row, const char* what) {
    if (rows != static_cast<std::size_t>(frame.size())) {
        throw ValidationError(std::string(what) + ": expected one row per hypothesis");
    }
    if (cols_of_first_row != grades.size()) {
        throw ValidationError(std::string(what) + ": expected one column per grade");
    }
}

double round_half_up_4dp(double x) {
    return std::floor(x * 10000.0 + 0.5) / 10000.0;
}

} // namespace

CountTable::CountTable(std::string criterion_id, Frame frame, std::vector<std::string> grades,
                       std::vector<std::vector<long>> counts)
    : criterion_id_(std::move(criterion_id)),
      frame_(std::move(frame)),
      grades_(std::move(grades)),
      counts_(std::move(counts)) {
    check_dims(frame_, grades_, counts_.size(), counts_.empty() ? 0 : counts_[0].size(),
               "count table");
    row_totals_.assign(counts_.size(), 0);
    col_totals_.assign(grades_.size(), 0);
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i].size() != grades_.size()) {
            throw ValidationError("count table rows have unequal length");
        }
        for (std::size_t j = 0; j < counts_[i].size(); ++j) {
            if (counts_[i][j] < 0) throw ValidationError("count table entries must be nonnegative");
            row_totals_[i] += counts_[i][j];
            col_totals_[j] += counts_[i][j];
            total_ += counts_[i][j];
        }
    }
}

long CountTable::count(int hypothesis, int grade) const {
    return counts_.at(static_cast<std::size_t>(hypothesis)).at(static_cast<std::size_t>(grade));
}

LikelihoodMatrix::LikelihoodMatrix(std::string criterion_id, Frame frame,
                                   std::vector<std::string> grades,
                                   std::vector<std::vector<double>> entries)
    : criterion_id_(std::move(criterion_id)),
      frame_(std::move(frame)),
      grades_(std::move(grades)),
      entries_(std::move(entries)) {
    check_dims(frame_, grades_, entries_.size(), entries_.empty() ? 0 : entries_[0].size(),
               "likelihood matrix");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].size() != grades_.size()) {
            throw ValidationError("likelihood matrix rows have unequal length");
        }
        double row_sum = 0.0;
        for (double v : entries_[i]) {
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                throw ValidationError("likelihood entries must lie in [0,1]");
            }
            row_sum += v;
        }
        if (std::abs(row_sum - 1.0) > 1e-9) {
            throw ValidationError("likelihood row for hypothesis '" +
                                  frame_.label(static_cast<int>(i)) + "' sums to " +
                                  std::to_string(row_sum) + ", expected 1");
        }
    }
}

double LikelihoodMatrix::at(int hypothesis, int grade) const {
    return entries_.at(static_cast<std::size_t>(hypothesis)).at(static_cast<std::size_t>(grade));
}

std::vector<double> LikelihoodMatrix::column(int grade) const {
    std::vector<double> out(static_cast<std::size_t>(frame_.size()));
    for (int i = 0; i < frame_.size(); ++i) out[static_cast<std::size_t>(i)] = at(i, grade);
    return out;
}

BeliefMatrix::BeliefMatrix(std::string criterion_id, Frame frame, std::vector<std::string> grades,
                           std::vector<std::vector<double>> entries, Rounding rounding)
    : criterion_id_(std::move(criterion_id)),
      frame_(std::move(frame)),
      grades_(std::move(grades)),
      entries_(std::move(entries)),
      rounding_(rounding) {
    check_dims(frame_, grades_, entries_.size(), entries_.empty() ? 0 : entries_[0].size(),
               "belief matrix");
    for (const auto& row : entries_) {
        if (row.size() != grades_.size()) {
            throw ValidationError("belief matrix rows have unequal length");
        }
        for (double v : row) {
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                throw ValidationError("belief entries must lie in [0,1]");
            }
        }
    }
    for (std::size_t j = 0; j < grades_.size(); ++j) {
        double col_sum = 0.0;
        for (std::size_t i = 0; i < entries_.size(); ++i) col_sum += entries_[i][j];
        if (std::abs(col_sum - 1.0) > column_sum_tolerance()) {
            throw ValidationError("belief column for grade '" + grades_[j] + "' sums to " +
                                  std::to_string(col_sum) + ", expected 1");
        }
    }
}

double BeliefMatrix::at(int hypothesis, int grade) const {
    return entries_.at(static_cast<std::size_t>(hypothesis)).at(static_cast<std::size_t>(grade));
}

std::vector<double> BeliefMatrix::column(int grade) const {
    std::vector<double> out(static_cast<std::size_t>(frame_.size()));
    for (int i = 0; i < frame_.size(); ++i) out[static_cast<std::size_t>(i)] = at(i, grade);
    return out;
}

double BeliefMatrix::column_sum_tolerance() const {
    // Half-up rounding moves each of the N entries of a column by at most
    // 0.00005, so a rounded column can miss 1 by up to N * 0.00005.
    if (rounding_ == Rounding::kFourDecimals) return frame_.size() * 5e-5;
    return BeliefDistribution::kSumTolerance;
}

CountTable tally(std::span<const HistoryRecord> records, const std::string& criterion_id,
                 const Frame& frame, const std::vector<std::string>& grades) {
    std::vector<std::vector<long>> counts(
        static_cast<std::size_t>(frame.size()), std::vector<long>(grades.size(), 0));
    long matched = 0;
    for (const HistoryRecord& rec : records) {
        if (trim(rec.criterion_id) != trim(criterion_id)) continue;
        const auto grade = find_label(grades, rec.grade);
        if (!grade) {
            throw ValidationError("unknown grade '" + rec.grade + "' for criterion '" +
                                  criterion_id + "'");
        }
        const auto hypothesis = frame.index_of(rec.outcome);
        if (!hypothesis) {
            throw ValidationError("unknown outcome '" + rec.outcome + "'");
        }
        ++counts[static_cast<std::size_t>(*hypothesis)][static_cast<std::size_t>(*grade)];
        ++matched;
    }
    if (matched == 0) {
        throw ValidationError("no history records for criterion '" + criterion_id + "'");
    }
    CountTable table(criterion_id, frame, grades, std::move(counts));
    for (int i = 0; i < frame.size(); ++i) {
        if (table.row_total(i) == 0) {
            throw ValidationError("no history for outcome '" + frame.label(i) +
                                  "' on criterion '" + criterion_id + "'");
        }
    }
    return table;
}

LikelihoodMatrix likelihoods(const CountTable& t) {
    std::vector<std::vector<double>> entries(
        static_cast<std::size_t>(t.frame().size()),
        std::vector<double>(t.grades().size(), 0.0));
    for (int i = 0; i < t.frame().size(); ++i) {
        const long row_total = t.row_total(i);
        if (row_total == 0) {
            throw ValidationError("no history for outcome '" + t.frame().label(i) +
                                  "' on criterion '" + t.criterion_id() + "'");
        }
        for (std::size_t j = 0; j < t.grades().size(); ++j) {
            entries[static_cast<std::size_t>(i)][j] =
                static_cast<double>(t.count(i, static_cast<int>(j))) /
                static_cast<double>(row_total);
        }
    }
    return LikelihoodMatrix(t.criterion_id(), t.frame(), t.grades(), std::move(entries));
}

BeliefMatrix beliefs_from_likelihoods(const LikelihoodMatrix& c, Rounding rounding) {
    const int n = c.frame().size();
    const std::size_t grade_count = c.grades().size();
    std::vector<std::vector<double>> entries(
        static_cast<std::size_t>(n), std::vector<double>(grade_count, 0.0));
    for (std::size_t j = 0; j < grade_count; ++j) {
        double col_sum = 0.0;
        for (int i = 0; i < n; ++i) col_sum += c.at(i, static_cast<int>(j));
        if (col_sum <= 0.0) {
            throw ValidationError("grade '" + c.grades()[j] + "' was never observed for criterion '" +
                                  c.criterion_id() + "'");
        }
        for (int i = 0; i < n; ++i) {
            double p = c.at(i, static_cast<int>(j)) / col_sum;
            if (rounding == Rounding::kFourDecimals) p = round_half_up_4dp(p);
            entries[static_cast<std::size_t>(i)][j] = p;
        }
    }
    return BeliefMatrix(c.criterion_id(), c.frame(), c.grades(), std::move(entries), rounding);
}

BeliefDistribution grade_to_bd(const BeliefMatrix& m, std::string_view grade) {
    const auto j = find_label(m.grades(), grade);
    if (!j) {
        throw ValidationError("unknown grade '" + std::string(grade) + "' for criterion '" +
                              m.criterion_id() + "'");
    }
    return BeliefDistribution::from_singletons(m.frame(), m.column(*j), m.column_sum_tolerance());
}

} // namespace erfund
