#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "erfund/er_rule.hpp"
#include "erfund/errors.hpp"
#include "support/checks.hpp"

using namespace erfund;

namespace {

Frame binary() { return Frame({"Funded", "Unfunded"}); }

BeliefDistribution bd2(double p1, double p2) {
    return BeliefDistribution::from_singletons(binary(), {p1, p2});
}

} // namespace

TEST_CASE("frame construction and validation") {
    Frame f = binary();
    CHECK(f.size() == 2);
    CHECK(f.label(0) == "Funded");
    CHECK(f.full_set() == 0b11);
    CHECK(f.index_of("unfunded").value() == 1); // case-insensitive
    CHECK(f.subset_name(0b11) == "{Funded,Unfunded}");

    CHECK(Frame({"a", "b", "c"}).size() == 3);
    CHECK_THROWS_AS(Frame({"a", "a"}), ValidationError);
    CHECK_THROWS_AS(Frame({"only"}), ValidationError);
    CHECK_THROWS_AS(Frame(std::vector<std::string>(17, "x")), ValidationError);
    CHECK_THROWS_AS(Frame({"a", " "}), ValidationError);
}

TEST_CASE("belief distribution invariants") {
    CHECK_NOTHROW(bd2(0.2, 0.8));
    CHECK_THROWS_AS(bd2(0.2, 0.7), ValidationError);        // sums to 0.9
    CHECK_THROWS_AS(bd2(-0.1, 1.1), ValidationError);       // negative mass
    CHECK_THROWS_AS(BeliefDistribution(binary(), {{0, 1.0}}), ValidationError); // empty set
    CHECK_THROWS_AS(BeliefDistribution(binary(), {{0b100, 1.0}}), ValidationError); // outside frame

    // mass on a non-singleton subset is allowed
    BeliefDistribution bd(binary(), {{0b01, 0.5}, {0b11, 0.5}});
    CHECK(bd.mass(0b11) == 0.5);
    CHECK_FALSE(bd.singletons_only());
    CHECK(bd2(1.0, 0.0).singletons_only());
    CHECK(bd2(1.0, 0.0).mass(0b10) == 0.0); // zero entries pruned, read back as 0
}

TEST_CASE("evidence bounds") {
    CHECK_NOTHROW(Evidence(bd2(0.2, 0.8), 0.0, 1.0));
    CHECK_THROWS_AS(Evidence(bd2(0.2, 0.8), 1.1, 0.5), ValidationError);
    CHECK_THROWS_AS(Evidence(bd2(0.2, 0.8), 0.5, -0.1), ValidationError);
}

TEST_CASE("discount") {
    // w = r = 0.25 on {0.2, 0.8}
    ExtendedMass m = discount(Evidence(bd2(0.2, 0.8), 0.25, 0.25));
    CHECK(m.mass(0b01) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(m.mass(0b10) == doctest::Approx(0.20).epsilon(1e-12));
    CHECK(m.residual() == doctest::Approx(0.75).epsilon(1e-12));

    // full weight and reliability: masses unchanged, no residual
    ExtendedMass full = discount(Evidence(bd2(0.3, 0.7), 1.0, 1.0));
    CHECK(full.mass(0b01) == doctest::Approx(0.3));
    CHECK(full.residual() == 0.0);

    // vacuous evidence
    ExtendedMass empty = discount(Evidence(bd2(0.3, 0.7), 0.0, 0.0));
    CHECK(empty.in_frame_total() == 0.0);
    CHECK(empty.residual() == 1.0);
}

TEST_CASE("orthogonal sum of the raw two-expert setup") {
    // Hand-expanded products for w=r raw values 0.25 and 0.85.
    ExtendedMass a = discount(Evidence(bd2(0.2, 0.8), 0.25, 0.25));
    ExtendedMass b = discount(Evidence(bd2(0.7, 0.3), 0.85, 0.85));
    ExtendedMass sum = orthogonal_sum(a, b);
    CHECK(sum.mass(0b01) == doctest::Approx(0.4835).epsilon(1e-12));
    CHECK(sum.mass(0b10) == doctest::Approx(0.27225).epsilon(1e-12));
    CHECK(sum.residual() == doctest::Approx(0.1125).epsilon(1e-12));

    // normalization excludes the residual from numerator and denominator
    BeliefDistribution p = normalize(sum);
    const double expected_funded = 0.4835 / (0.4835 + 0.27225);
    check_near(p.singleton_mass(0), expected_funded, 1e-12);
    check_near(p.singleton_mass(0), 0.63977, 1e-5);
    check_near(p.singleton_mass(1), 0.36023, 1e-5);
}

TEST_CASE("orthogonal sum neutral element and total conflict") {
    Frame f = binary();
    ExtendedMass vacuous(f, {}, 1.0);
    ExtendedMass b = discount(Evidence(bd2(0.7, 0.3), 0.85, 0.85));
    ExtendedMass out = orthogonal_sum(vacuous, b);
    CHECK(out.mass(0b01) == doctest::Approx(b.mass(0b01)).epsilon(1e-12));
    CHECK(out.mass(0b10) == doctest::Approx(b.mass(0b10)).epsilon(1e-12));
    CHECK(out.residual() == doctest::Approx(b.residual()).epsilon(1e-12));

    // fully reliable, certain, disjoint evidence annihilates all mass
    ExtendedMass c1(f, {{0b01, 1.0}}, 0.0);
    ExtendedMass c2(f, {{0b10, 1.0}}, 0.0);
    ExtendedMass conflict = orthogonal_sum(c1, c2);
    CHECK(conflict.total_conflict());
    CHECK_THROWS_AS(normalize(conflict), ComputationError);
    CHECK_THROWS_WITH_AS(normalize(conflict),
                         "complete conflict: no effective evidence supports any proposition",
                         ComputationError);

    Frame other({"x", "y"});
    CHECK_THROWS_AS(orthogonal_sum(c1, ExtendedMass(other, {{0b01, 1.0}}, 0.0)), ValidationError);
}

TEST_CASE("normalize splits partial mass evenly") {
    ExtendedMass m(binary(), {{0b01, 0.3}, {0b10, 0.3}}, 0.4);
    BeliefDistribution p = normalize(m);
    CHECK(p.singleton_mass(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.singleton_mass(1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("combine reproduces the two-expert example with normalized weights") {
    // reliabilities 0.25 and 0.85, normalized to sum 1 and used as weights
    const double sum = 0.25 + 0.85;
    std::vector<Evidence> items = {
        Evidence(bd2(0.2, 0.8), 0.25 / sum, 0.25 / sum),
        Evidence(bd2(0.7, 0.3), 0.85 / sum, 0.85 / sum),
    };
    BeliefDistribution p = combine(items);
    check_near(p.singleton_mass(0), 0.633, 0.001);
    check_near(p.singleton_mass(1), 0.367, 0.001);
}

TEST_CASE("combine of the five-expert criterion evidence") {
    // printed belief columns with raw w = r reliabilities
    std::vector<Evidence> items = {
        Evidence(bd2(0.8219, 0.1781), 0.6667, 0.6667),
        Evidence(bd2(0.5582, 0.4418), 0.3466, 0.3466),
        Evidence(bd2(0.2124, 0.7876), 1.0000, 1.0000),
        Evidence(bd2(0.5582, 0.4418), 0.2500, 0.2500),
        Evidence(bd2(0.5582, 0.4418), 0.1000, 0.1000),
    };
    BeliefDistribution p = combine(items);
    check_near(p.singleton_mass(0), 0.3661, 0.001);
    check_near(p.singleton_mass(1), 0.6339, 0.001);
}

TEST_CASE("combine identity and vacuous items") {
    std::vector<Evidence> one = {Evidence(bd2(0.7, 0.3), 1.0, 1.0)};
    BeliefDistribution p = combine(one);
    CHECK(p.singleton_mass(0) == doctest::Approx(0.7).epsilon(1e-12));

    // zero-weight items are dropped and never change the result
    std::vector<Evidence> with_vacuous = {Evidence(bd2(0.7, 0.3), 1.0, 1.0),
                                          Evidence(bd2(0.1, 0.9), 0.0, 0.7)};
    BeliefDistribution q = combine(with_vacuous);
    CHECK(q.singleton_mass(0) == doctest::Approx(0.7).epsilon(1e-12));

    std::vector<Evidence> all_vacuous = {Evidence(bd2(0.7, 0.3), 0.0, 0.0)};
    CHECK_THROWS_AS(combine(all_vacuous), ComputationError);
    CHECK_THROWS_AS(combine(std::vector<Evidence>{}), ComputationError);
}

TEST_CASE("combine rejects mixed frames") {
    std::vector<Evidence> items = {
        Evidence(bd2(0.7, 0.3), 1.0, 1.0),
        Evidence(BeliefDistribution::from_singletons(Frame({"x", "y"}), {0.5, 0.5}), 1.0, 1.0)};
    CHECK_THROWS_AS(combine(items), ValidationError);
}

TEST_CASE("bayes posterior") {
    PriorEvidence uniform = PriorEvidence::uniform(binary());

    // product-and-normalize of the Excellent and Fund-with-priority columns
    std::vector<std::vector<double>> columns = {{0.4641, 0.1006}, {0.3373, 0.0588}};
    BeliefDistribution p = bayes_posterior(uniform, columns);
    const double funded = 0.5 * 0.4641 * 0.3373;
    const double unfunded = 0.5 * 0.1006 * 0.0588;
    check_near(p.singleton_mass(0), funded / (funded + unfunded), 1e-12);
    check_near(p.singleton_mass(0), 0.9636, 5e-5);
    check_near(p.singleton_mass(1), 0.0364, 5e-5);

    // a uniform likelihood column is uninformative
    BeliefDistribution flat = bayes_posterior(uniform, {{0.5, 0.5}});
    CHECK(flat.singleton_mass(0) == doctest::Approx(0.5).epsilon(1e-12));

    // degenerate prior stays degenerate under positive likelihoods
    PriorEvidence certain(binary(), {1.0, 0.0});
    BeliefDistribution still = bayes_posterior(certain, {{0.3, 0.7}, {0.9, 0.1}});
    CHECK(still.singleton_mass(0) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(bayes_posterior(uniform, {{0.0, 0.0}}), ValidationError);
    CHECK_THROWS_AS(bayes_posterior(uniform, {{0.5, -0.5}}), ValidationError);
    CHECK_THROWS_AS(bayes_posterior(uniform, {{0.5}}), ValidationError);
    // contradictory: prior excludes the only supported hypothesis
    CHECK_THROWS_AS(bayes_posterior(certain, {{0.0, 1.0}}), ComputationError);
}

TEST_CASE("prior evidence must be singleton-only") {
    CHECK_THROWS_AS(PriorEvidence(BeliefDistribution(binary(), {{0b11, 1.0}})), ValidationError);
    CHECK_NOTHROW(PriorEvidence::uniform(Frame({"a", "b", "c"})));
}
