#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "erfund/frame.hpp"

namespace erfund {

// Basic probability assignment over the non-empty subsets of a frame.
// Masses are nonnegative, sum to 1 within `sum_tolerance`, and the empty
// set never carries mass. Zero entries are pruned so the stored map holds
// focal elements only.
class BeliefDistribution {
public:
    static constexpr double kSumTolerance = 1e-9;

    BeliefDistribution(Frame frame, std::map<std::uint32_t, double> masses,
                       double sum_tolerance = kSumTolerance);

    // Mass on singleton hypotheses only, given in frame order.
    static BeliefDistribution from_singletons(Frame frame, const std::vector<double>& p,
                                              double sum_tolerance = kSumTolerance);

    const Frame& frame() const { return frame_; }
    const std::map<std::uint32_t, double>& masses() const { return masses_; }
    double mass(std::uint32_t subset) const;
    double singleton_mass(int hypothesis) const { return mass(frame_.singleton(hypothesis)); }
    std::vector<double> singleton_masses() const;
    bool singletons_only() const;

private:
    Frame frame_;
    std::map<std::uint32_t, double> masses_;
};

// A belief distribution together with the weight and reliability of its
// source. Weight is the importance the user of the evidence assigns to it;
// reliability is the ability of the source to give correct assessments.
struct Evidence {
    BeliefDistribution bd;
    double weight;
    double reliability;

    Evidence(BeliefDistribution bd, double weight, double reliability);
};

// Prior over singleton hypotheses, used as the starting point of Bayesian
// posterior computation.
class PriorEvidence {
public:
    explicit PriorEvidence(BeliefDistribution bd);
    PriorEvidence(Frame frame, const std::vector<double>& p);
    static PriorEvidence uniform(Frame frame);

    const BeliefDistribution& bd() const { return bd_; }

private:
    BeliefDistribution bd_;
};

// Unnormalized mass function produced by discounting and orthogonal sums.
// `residual` is the mass on the power-set residue: the bookkeeping element
// holding undiscounted belief (1 - r). It intersects any proposition as that
// proposition and is excluded from the final normalization. The all-zero
// state marks complete conflict.
class ExtendedMass {
public:
    ExtendedMass(Frame frame, std::map<std::uint32_t, double> masses, double residual);

    const Frame& frame() const { return frame_; }
    const std::map<std::uint32_t, double>& masses() const { return masses_; }
    double mass(std::uint32_t subset) const;
    double residual() const { return residual_; }
    double in_frame_total() const;
    bool total_conflict() const { return masses_.empty() && residual_ == 0.0; }

private:
    Frame frame_;
    std::map<std::uint32_t, double> masses_;
    double residual_;
};

} // namespace erfund
