#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "erfund/errors.hpp"
#include "erfund/ranking.hpp"
#include "support/case_study.hpp"
#include "support/checks.hpp"

using namespace erfund;
using namespace erfund::testsupport;

namespace {

const std::map<std::string, GradeScale> kScales = {
    {"C1", {{"Poor", "Average", "Good", "Excellent"}, {1, 2, 3, 4}}},
    {"C2", {{"Not fund", "Fund", "Fund with priority"}, {0, 1, 2}}},
};

std::vector<ProjectScore> with_y(const std::vector<double>& ys) {
    std::vector<ProjectScore> out;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        ProjectScore s;
        s.project_id = "P" + std::to_string(i + 1);
        s.y = ys[i];
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

TEST_CASE("additive baseline for the replay projects") {
    for (const ProjectReplay& replay : kReplays) {
        const auto assessments =
            project_assessments(replay.project_id, replay.c1_grades, replay.c2_grades);
        check_near(additive_score(assessments, kScales), replay.expected_x, 1e-12);
    }

    // floor of the scale
    std::vector<Assessment> lowest = {{"p", "E1", "C1", "Poor"}, {"p", "E2", "C1", "Poor"},
                                      {"p", "E1", "C2", "Not fund"}, {"p", "E2", "C2", "Not fund"}};
    check_near(additive_score(lowest, kScales), 1.0, 1e-12);

    std::vector<Assessment> missing_criterion = {{"p", "E1", "C1", "Good"}};
    CHECK_THROWS_AS(additive_score(missing_criterion, kScales), ValidationError);
}

TEST_CASE("rank order matches the published ten-project table") {
    // y column of the ten-project comparison
    const std::vector<double> ys = {0.7002, 0.5821, 0.2973, 0.2012, 0.2864,
                                    0.6019, 0.3510, 0.3005, 0.2691, 0.2297};
    const std::vector<int> expected_ranks = {1, 3, 6, 10, 7, 2, 4, 5, 8, 9};
    auto ranked = rank(with_y(ys), RankKey::kY);
    for (const ProjectScore& s : ranked) {
        const std::size_t index = static_cast<std::size_t>(std::stoi(s.project_id.substr(1)) - 1);
        CHECK(s.rank_y == expected_ranks[index]);
    }
    CHECK(ranked.front().project_id == "P1");
    CHECK(ranked.back().project_id == "P4");
}

TEST_CASE("rank tie handling") {
    auto all_equal = rank(with_y({0.5, 0.5, 0.5}), RankKey::kY);
    for (const ProjectScore& s : all_equal) {
        CHECK(s.rank_y == 1);
        CHECK(s.tie_group_y == 1);
    }
    // within a tie group the order is by project id
    CHECK(all_equal[0].project_id == "P1");
    CHECK(all_equal[2].project_id == "P3");

    auto pair = rank(with_y({0.2, 0.9}), RankKey::kY);
    CHECK(pair[0].project_id == "P2");
    CHECK(pair[0].rank_y == 1);
    CHECK(pair[1].rank_y == 2);

    CHECK_THROWS_AS(rank({}, RankKey::kY), ValidationError);
}

TEST_CASE("rank is invariant under input order") {
    std::vector<double> ys = {0.7, 0.4, 0.4, 0.9, 0.1, 0.4};
    auto a = rank(with_y(ys), RankKey::kY);
    auto shuffled = with_y(ys);
    std::mt19937 rng(7);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto b = rank(std::move(shuffled), RankKey::kY);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].project_id == b[i].project_id);
        CHECK(a[i].rank_y == b[i].rank_y);
        CHECK(a[i].tie_group_y == b[i].tie_group_y);
    }
}

TEST_CASE("topk boundary straddling") {
    // scores (5,4,4,4,3), outcomes (F,F,U,F,U), k=2: slot 1 funded, slot 2
    // sits in a tie group running past the boundary
    std::vector<ProjectScore> scores = with_y({5, 4, 4, 4, 3});
    const char* outcomes[] = {"Funded", "Funded", "Unfunded", "Funded", "Unfunded"};
    for (std::size_t i = 0; i < scores.size(); ++i) scores[i].outcome = outcomes[i];
    auto ranked = rank(std::move(scores), RankKey::kY);
    TopKReport report = topk_outcomes(ranked, 2, RankKey::kY, "Funded");
    CHECK(report.funded == 1);
    CHECK(report.unfunded == 0);
    CHECK(report.undifferentiated == 1);
    CHECK(report.funded + report.unfunded + report.undifferentiated == report.k);

    // no ties, k = n: plain outcome totals
    std::vector<ProjectScore> distinct = with_y({5, 4, 3, 2});
    const char* outcomes2[] = {"Funded", "Unfunded", "Funded", "Unfunded"};
    for (std::size_t i = 0; i < distinct.size(); ++i) distinct[i].outcome = outcomes2[i];
    TopKReport whole = topk_outcomes(rank(std::move(distinct), RankKey::kY), 4, RankKey::kY,
                                     "Funded");
    CHECK(whole.funded == 2);
    CHECK(whole.unfunded == 2);
    CHECK(whole.undifferentiated == 0);

    CHECK_THROWS_AS(topk_outcomes(ranked, 9, RankKey::kY, "Funded"), ValidationError);
    CHECK_THROWS_AS(topk_outcomes(ranked, 0, RankKey::kY, "Funded"), ValidationError);
}

TEST_CASE("topk on the constructed hundred-project set") {
    auto ranked = rank(hundred_project_scores(), RankKey::kX);
    TopKReport report = topk_outcomes(ranked, 20, RankKey::kX, "Funded");
    CHECK(report.funded + report.unfunded + report.undifferentiated == 20);
    // the 4.0 tie group occupies positions 19..23, so exactly two top-20
    // slots are undifferentiated
    CHECK(report.undifferentiated == 2);
    CHECK(report.funded == 17);
    CHECK(report.unfunded == 1);
}

TEST_CASE("histogram") {
    auto scores = hundred_project_scores();
    HistogramData data = histogram(scores, 0.2, RankKey::kX, "Funded");
    check_near(data.origin, 1.0, 1e-12);
    long funded = 0, unfunded = 0;
    int occupied = 0;
    for (const HistogramBin& bin : data.bins) {
        funded += bin.funded;
        unfunded += bin.unfunded;
        if (bin.funded + bin.unfunded > 0) ++occupied;
    }
    CHECK(funded == 20);
    CHECK(unfunded == 80);
    CHECK(occupied == 21); // 21 distinct scores over the 0.2 grid

    // a tie band lands in one bin with its own funded/unfunded split
    std::vector<ProjectScore> tied = with_y({0, 0, 0, 0, 0});
    for (std::size_t i = 0; i < tied.size(); ++i) {
        tied[i].x = 4.2;
        tied[i].outcome = i < 4 ? "Funded" : "Unfunded";
    }
    HistogramData one = histogram(tied, 0.2, RankKey::kX, "Funded");
    CHECK(one.bins.size() == 1);
    CHECK(one.bins[0].funded == 4);
    CHECK(one.bins[0].unfunded == 1);

    ProjectScore single;
    single.project_id = "P1";
    single.x = 3.3;
    single.outcome = "Unfunded";
    HistogramData singleton = histogram(std::vector<ProjectScore>{single}, 0.5, RankKey::kX,
                                        "Funded");
    CHECK(singleton.bins.size() == 1);

    CHECK_THROWS_AS(histogram({}, 0.2, RankKey::kX, "Funded"), ValidationError);
    CHECK_THROWS_AS(histogram(std::vector<ProjectScore>{single}, 0.0, RankKey::kX, "Funded"),
                    ValidationError);
}

TEST_CASE("baseline stays within the scale bounds") {
    // every combination of grades maps into [1.0, 6.0] for the case-study scales
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> c1(0, 3), c2(0, 2), experts(3, 5);
    const auto& g1 = kScales.at("C1").grades;
    const auto& g2 = kScales.at("C2").grades;
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Assessment> assessments;
        const int k = experts(rng);
        for (int e = 0; e < k; ++e) {
            const std::string expert = "E" + std::to_string(e + 1);
            assessments.push_back({"p", expert, "C1", g1[static_cast<std::size_t>(c1(rng))]});
            assessments.push_back({"p", expert, "C2", g2[static_cast<std::size_t>(c2(rng))]});
        }
        const double x = additive_score(assessments, kScales);
        CHECK(x >= 1.0);
        CHECK(x <= 6.0);
    }
}

TEST_CASE("er differentiates projects the baseline ties") {
    // replay projects 4 and 5 tie at x = 4.2 but receive distinct y values
    const auto matrices = case_study_matrices(Rounding::kFourDecimals);
    AggregationConfig config;
    config.criterion_weights = {{"C1", 2.0}, {"C2", 1.0}};
    std::vector<ProjectScore> scores;
    for (const ProjectReplay& replay : kReplays) {
        const auto assessments =
            project_assessments(replay.project_id, replay.c1_grades, replay.c2_grades);
        ProjectEvaluation eval = evaluate_project(
            assessments, matrices, expert_reliabilities(replay.reliabilities), config);
        ProjectScore s;
        s.project_id = replay.project_id;
        s.y = eval.funding_probability;
        s.x = additive_score(assessments, kScales);
        scores.push_back(std::move(s));
    }
    auto by_x = rank(scores, RankKey::kX);
    CHECK(by_x[0].tie_group_x == by_x[1].tie_group_x); // P4 and P5 tied at 4.2
    CHECK(by_x[0].x == by_x[1].x);
    auto by_y = rank(scores, RankKey::kY);
    CHECK(by_y[0].y != by_y[1].y);
    CHECK(by_y[1].y != by_y[2].y);
}
