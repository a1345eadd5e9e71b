#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "erfund/calibration.hpp"
#include "erfund/frame.hpp"

namespace erfund {

// Binary review track record of one expert: actual funding outcome against
// the expert's fund / not-fund recommendation.
struct ConfusionMatrix {
    long tp = 0; // funded, recommended fund
    long fn = 0; // funded, recommended not fund
    long fp = 0; // unfunded, recommended fund
    long tn = 0; // unfunded, recommended not fund

    long total() const { return tp + fn + fp + tn; }
    bool usable() const { return total() > 0; }
};

// Per-direction reliability rates. A nullopt rate marks a 0/0 case: the
// expert has never recommended in that direction, so no accuracy has been
// demonstrated there.
struct ReliabilityProfile {
    std::string expert_id;
    std::optional<double> positive_rate; // TP / (TP + FP)
    std::optional<double> negative_rate; // TN / (TN + FN)
    bool usable = false;
};

enum class Recommendation { kFund, kNotFund };

// Tally the expert's records on the recommendation criterion. A record
// counts as a "Fund" recommendation when its grade is one of `fund_grades`;
// the actual outcome is positive when it equals the first frame hypothesis.
// Records of other experts are ignored. An empty track record yields an
// all-zero, unusable matrix.
ConfusionMatrix confusion_from_history(std::span<const HistoryRecord> records,
                                       const std::string& expert_id,
                                       const std::vector<std::string>& fund_grades,
                                       const Frame& frame);

// Eq-style rates from the confusion matrix; 0/0 directions stay undefined.
ReliabilityProfile rates(const ConfusionMatrix& cm, std::string expert_id = {});

// Reliability applicable to a recommendation: the positive rate for Fund,
// the negative rate otherwise. An undefined rate resolves to 0 (no
// demonstrated accuracy in that direction contributes no reliable support).
// Throws for an unusable profile; callers may substitute a configured
// default instead.
double reliability_for(const ReliabilityProfile& profile, Recommendation recommendation);

} // namespace erfund
