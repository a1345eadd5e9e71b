#include "erfund/belief.hpp"

#include <cmath>
#include <string>

#include "erfund/errors.hpp"

namespace erfund {

namespace {

void check_subset(const Frame& frame, std::uint32_t subset, double value, const char* what) {
    if (subset == 0) {
        throw ValidationError(std::string(what) + ": mass assigned to the empty set");
    }
    if (!frame.contains(subset)) {
        throw ValidationError(std::string(what) + ": subset outside the frame");
    }
    if (!std::isfinite(value) || value < 0.0) {
        throw ValidationError(std::string(what) + ": mass on " + frame.subset_name(subset) +
                              " must be finite and nonnegative");
    }
}

} // namespace

BeliefDistribution::BeliefDistribution(Frame frame, std::map<std::uint32_t, double> masses,
                                       double sum_tolerance)
    : frame_(std::move(frame)), masses_(std::move(masses)) {
    double total = 0.0;
    for (auto it = masses_.begin(); it != masses_.end();) {
        check_subset(frame_, it->first, it->second, "belief distribution");
        total += it->second;
        it = (it->second == 0.0) ? masses_.erase(it) : std::next(it);
    }
    if (std::abs(total - 1.0) > sum_tolerance) {
        throw ValidationError("belief distribution masses sum to " + std::to_string(total) +
                              ", expected 1");
    }
}

BeliefDistribution BeliefDistribution::from_singletons(Frame frame, const std::vector<double>& p,
                                                       double sum_tolerance) {
    if (static_cast<int>(p.size()) != frame.size()) {
        throw ValidationError("singleton mass vector has " + std::to_string(p.size()) +
                              " entries for a frame of size " + std::to_string(frame.size()));
    }
    std::map<std::uint32_t, double> masses;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != 0.0) masses[frame.singleton(static_cast<int>(i))] = p[i];
    }
    return BeliefDistribution(std::move(frame), std::move(masses), sum_tolerance);
}

double BeliefDistribution::mass(std::uint32_t subset) const {
    auto it = masses_.find(subset);
    return it == masses_.end() ? 0.0 : it->second;
}

std::vector<double> BeliefDistribution::singleton_masses() const {
    std::vector<double> out(static_cast<std::size_t>(frame_.size()));
    for (int i = 0; i < frame_.size(); ++i) out[static_cast<std::size_t>(i)] = singleton_mass(i);
    return out;
}

bool BeliefDistribution::singletons_only() const {
    for (const auto& [subset, mass] : masses_) {
        if ((subset & (subset - 1)) != 0) return false; // more than one bit set
    }
    return true;
}

Evidence::Evidence(BeliefDistribution bd_, double weight_, double reliability_)
    : bd(std::move(bd_)), weight(weight_), reliability(reliability_) {
    if (!std::isfinite(weight) || weight < 0.0 || weight > 1.0) {
        throw ValidationError("evidence weight must be in [0,1], got " + std::to_string(weight));
    }
    if (!std::isfinite(reliability) || reliability < 0.0 || reliability > 1.0) {
        throw ValidationError("evidence reliability must be in [0,1], got " +
                              std::to_string(reliability));
    }
}

PriorEvidence::PriorEvidence(BeliefDistribution bd) : bd_(std::move(bd)) {
    if (!bd_.singletons_only()) {
        throw ValidationError("prior evidence must assign mass to singleton hypotheses only");
    }
}

PriorEvidence::PriorEvidence(Frame frame, const std::vector<double>& p)
    : PriorEvidence(BeliefDistribution::from_singletons(std::move(frame), p)) {}

PriorEvidence PriorEvidence::uniform(Frame frame) {
    std::vector<double> p(static_cast<std::size_t>(frame.size()),
                          1.0 / static_cast<double>(frame.size()));
    return PriorEvidence(std::move(frame), p);
}

ExtendedMass::ExtendedMass(Frame frame, std::map<std::uint32_t, double> masses, double residual)
    : frame_(std::move(frame)), masses_(std::move(masses)), residual_(residual) {
    for (auto it = masses_.begin(); it != masses_.end();) {
        check_subset(frame_, it->first, it->second, "extended mass");
        it = (it->second == 0.0) ? masses_.erase(it) : std::next(it);
    }
    if (!std::isfinite(residual_) || residual_ < 0.0) {
        throw ValidationError("extended mass residual must be finite and nonnegative");
    }
}

double ExtendedMass::mass(std::uint32_t subset) const {
    auto it = masses_.find(subset);
    return it == masses_.end() ? 0.0 : it->second;
}

double ExtendedMass::in_frame_total() const {
    double total = 0.0;
    for (const auto& [subset, mass] : masses_) total += mass;
    return total;
}

} // namespace erfund
