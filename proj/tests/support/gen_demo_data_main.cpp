// Regenerates the sample data files shipped under data/.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <tuple>
#include <vector>

#include "erfund/config.hpp"
#include "support/case_study.hpp"

using namespace erfund;
using namespace erfund::testsupport;

int main(int argc, char** argv) {
    const std::string out_dir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(out_dir);

    write_history_csv(out_dir + "/history.csv", synthetic_history());

    std::vector<Assessment> assessments;
    std::vector<std::tuple<std::string, std::string, double>> reliabilities;
    auto add = [&](const std::string& id, const std::vector<std::string>& c1,
                   const std::vector<std::string>& c2, const std::vector<double>& rs) {
        auto rows = project_assessments(id, c1, c2);
        assessments.insert(assessments.end(), rows.begin(), rows.end());
        for (std::size_t k = 0; k < rs.size(); ++k) {
            reliabilities.emplace_back(id, "E" + std::to_string(k + 1), rs[k]);
        }
    };
    add("X1", kFiveExperts.c1_grades, kFiveExperts.c2_grades, kFiveExperts.reliabilities);
    for (const ProjectReplay& replay : kReplays) {
        add(replay.project_id, replay.c1_grades, replay.c2_grades, replay.reliabilities);
    }
    write_assessments_csv(out_dir + "/assessments.csv", assessments);
    write_overrides_csv(out_dir + "/reliabilities.csv", reliabilities);

    // A replay set for the compare command: projects drawn from the
    // historical pool, so their actual outcomes are known.
    std::vector<Assessment> candidates;
    std::vector<std::tuple<std::string, std::string, double>> candidate_reliabilities;
    auto add_candidate = [&](const std::string& id, const std::vector<std::string>& c1,
                             const std::vector<std::string>& c2) {
        auto rows = project_assessments(id, c1, c2);
        candidates.insert(candidates.end(), rows.begin(), rows.end());
        for (std::size_t k = 0; k < c1.size(); ++k) {
            candidate_reliabilities.emplace_back(id, "E" + std::to_string(k + 1),
                                                 0.3 + 0.1 * static_cast<double>(k));
        }
    };
    add_candidate("F001", {"Excellent", "Good", "Excellent"},
                  {"Fund with priority", "Fund", "Fund"});
    add_candidate("F002", {"Good", "Good", "Excellent"}, {"Fund", "Fund", "Fund with priority"});
    add_candidate("F003", {"Good", "Good", "Good"}, {"Fund", "Fund", "Fund"});
    add_candidate("U001", {"Average", "Poor", "Average"}, {"Not fund", "Not fund", "Not fund"});
    add_candidate("U002", {"Good", "Average", "Average"}, {"Fund", "Not fund", "Not fund"});
    add_candidate("U003", {"Average", "Average", "Good"}, {"Not fund", "Fund", "Not fund"});
    write_assessments_csv(out_dir + "/candidates.csv", candidates);
    write_overrides_csv(out_dir + "/candidate_reliabilities.csv", candidate_reliabilities);

    std::ofstream config(out_dir + "/nsfc_case_study.json", std::ios::binary);
    config << config_to_json_text(nsfc_case_study_config());

    std::printf("wrote history, assessment, candidate, reliability and config files under %s/\n",
                out_dir.c_str());
    return 0;
}
