#pragma once

#include <span>
#include <vector>

#include "erfund/belief.hpp"

namespace erfund {

// Weighted mass assignment of one piece of evidence: m(A) = w * p(A) for
// every focal A, residual = 1 - r. The per-evidence scalar 1/(1+w-r) of the
// full ER rule multiplies every entry uniformly and cancels in the final
// normalization, so it is omitted here.
ExtendedMass discount(const Evidence& e);

// Conjunctive combination without normalization: products of masses land on
// the intersection of their propositions, mass on empty intersections is
// discarded, and the residual acts as a neutral element. Commutative and
// associative up to floating rounding.
ExtendedMass orthogonal_sum(const ExtendedMass& a, const ExtendedMass& b);

// p(A) = m(A) / total in-frame mass. The residual is excluded from both
// numerator and denominator. Throws ComputationError when no in-frame mass
// survives (complete conflict).
BeliefDistribution normalize(const ExtendedMass& m);

// Full ER-rule combination: drops zero-weight items, discounts the rest,
// folds them with orthogonal_sum and normalizes once at the end. Carrying
// unnormalized mass through the fold keeps the operation exactly associative;
// intermediate normalization would only rescale by a constant. The result is
// invariant under permutation of the input list.
BeliefDistribution combine(std::span<const Evidence> items);

// Bayesian posterior from a singleton prior and per-hypothesis likelihood
// columns: p(h_i) proportional to prior_i * prod_j col_j[i]. Serves as the
// independent reference for the ER-Bayes equivalence checks.
BeliefDistribution bayes_posterior(const PriorEvidence& prior,
                                   const std::vector<std::vector<double>>& likelihood_columns);

} // namespace erfund
