#include "erfund/er_rule.hpp"

#include <cmath>
#include <string>

#include "erfund/errors.hpp"

namespace erfund {

ExtendedMass discount(const Evidence& e) {
    std::map<std::uint32_t, double> masses;
    for (const auto& [subset, p] : e.bd.masses()) {
        masses[subset] = e.weight * p;
    }
    return ExtendedMass(e.bd.frame(), std::move(masses), 1.0 - e.reliability);
}

ExtendedMass orthogonal_sum(const ExtendedMass& a, const ExtendedMass& b) {
    if (a.frame() != b.frame()) {
        throw ValidationError("orthogonal sum of masses on different frames");
    }
    std::map<std::uint32_t, double> out;
    // Residual cross terms: the residual intersects any proposition as that
    // proposition itself.
    for (const auto& [subset, mass] : b.masses()) out[subset] += a.residual() * mass;
    for (const auto& [subset, mass] : a.masses()) out[subset] += mass * b.residual();
    for (const auto& [sa, ma] : a.masses()) {
        for (const auto& [sb, mb] : b.masses()) {
            const std::uint32_t common = sa & sb;
            if (common != 0) out[common] += ma * mb;
            // empty intersection: conflicting mass is discarded
        }
    }
    return ExtendedMass(a.frame(), std::move(out), a.residual() * b.residual());
}

BeliefDistribution normalize(const ExtendedMass& m) {
    const double total = m.in_frame_total();
    if (total <= 0.0) {
        throw ComputationError(
            "complete conflict: no effective evidence supports any proposition");
    }
    std::map<std::uint32_t, double> p;
    for (const auto& [subset, mass] : m.masses()) p[subset] = mass / total;
    return BeliefDistribution(m.frame(), std::move(p));
}

BeliefDistribution combine(std::span<const Evidence> items) {
    std::vector<const Evidence*> effective;
    for (const Evidence& e : items) {
        if (e.weight > 0.0) effective.push_back(&e);
    }
    if (effective.empty()) {
        throw ComputationError("no effective evidence: every item has zero weight");
    }
    const Frame& frame = effective.front()->bd.frame();
    for (const Evidence* e : effective) {
        if (e->bd.frame() != frame) {
            throw ValidationError("cannot combine evidence on different frames");
        }
    }
    ExtendedMass acc = discount(*effective.front());
    for (std::size_t i = 1; i < effective.size(); ++i) {
        acc = orthogonal_sum(acc, discount(*effective[i]));
    }
    return normalize(acc);
}

BeliefDistribution bayes_posterior(const PriorEvidence& prior,
                                   const std::vector<std::vector<double>>& likelihood_columns) {
    const Frame& frame = prior.bd().frame();
    const int n = frame.size();
    std::vector<double> posterior = prior.bd().singleton_masses();
    for (std::size_t j = 0; j < likelihood_columns.size(); ++j) {
        const auto& column = likelihood_columns[j];
        if (static_cast<int>(column.size()) != n) {
            throw ValidationError("likelihood column " + std::to_string(j) + " has " +
                                  std::to_string(column.size()) + " entries for a frame of size " +
                                  std::to_string(n));
        }
        bool any_positive = false;
        for (double c : column) {
            if (!std::isfinite(c) || c < 0.0) {
                throw ValidationError("likelihood entries must be finite and nonnegative");
            }
            if (c > 0.0) any_positive = true;
        }
        if (!any_positive) {
            throw ValidationError("likelihood column " + std::to_string(j) + " is all zero");
        }
        for (int i = 0; i < n; ++i) posterior[static_cast<std::size_t>(i)] *= column[static_cast<std::size_t>(i)];
    }
    double total = 0.0;
    for (double v : posterior) total += v;
    if (total <= 0.0) {
        throw ComputationError("contradictory likelihoods: posterior carries no mass");
    }
    for (double& v : posterior) v /= total;
    return BeliefDistribution::from_singletons(frame, posterior);
}

} // namespace erfund
