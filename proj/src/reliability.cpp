#include "erfund/reliability.hpp"

#include "erfund/errors.hpp"
#include "erfund/strings.hpp"

namespace erfund {

ConfusionMatrix confusion_from_history(std::span<const HistoryRecord> records,
                                       const std::string& expert_id,
                                       const std::vector<std::string>& fund_grades,
                                       const Frame& frame) {
    ConfusionMatrix cm;
    for (const HistoryRecord& rec : records) {
        if (trim(rec.expert_id) != trim(expert_id)) continue;
        const auto hypothesis = frame.index_of(rec.outcome);
        if (!hypothesis) {
            throw ValidationError("unknown outcome '" + rec.outcome + "'");
        }
        const bool actually_funded = (*hypothesis == 0);
        const bool recommended_fund = find_label(fund_grades, rec.grade).has_value();
        if (actually_funded) {
            recommended_fund ? ++cm.tp : ++cm.fn;
        } else {
            recommended_fund ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

ReliabilityProfile rates(const ConfusionMatrix& cm, std::string expert_id) {
    ReliabilityProfile profile;
    profile.expert_id = std::move(expert_id);
    profile.usable = cm.usable();
    if (cm.tp + cm.fp > 0) {
        profile.positive_rate = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    }
    if (cm.tn + cm.fn > 0) {
        profile.negative_rate = static_cast<double>(cm.tn) / static_cast<double>(cm.tn + cm.fn);
    }
    return profile;
}

double reliability_for(const ReliabilityProfile& profile, Recommendation recommendation) {
    if (!profile.usable) {
        throw ValidationError("no review history for expert '" + profile.expert_id + "'");
    }
    const auto& rate = (recommendation == Recommendation::kFund) ? profile.positive_rate
                                                                 : profile.negative_rate;
    return rate.value_or(0.0);
}

} // namespace erfund
