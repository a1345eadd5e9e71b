#include "erfund/reports.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "erfund/errors.hpp"
#include "erfund/strings.hpp"

namespace erfund {

namespace {

using nlohmann::json;

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += "\"";
    return out;
}

void write_file(const std::string& out_dir, const std::string& name, const std::string& content,
                std::vector<std::string>& files_written) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string path = (fs::path(out_dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError(path + ": cannot write file");
    }
    out << content;
    files_written.push_back(path);
}

Rounding rounding_from_name(const std::string& name) {
    if (name == "none") return Rounding::kNone;
    if (name == "4dp") return Rounding::kFourDecimals;
    throw ValidationError("unknown rounding mode '" + name + "'");
}

std::string rounding_name(Rounding r) {
    return r == Rounding::kFourDecimals ? "4dp" : "none";
}

// ---- pipeline assembly ----

struct CalibratedPipeline {
    CalibrationSet calibration;
    std::map<std::string, BeliefMatrix> belief_by_criterion;
};

CalibratedPipeline calibrate_all(const PipelineConfig& config,
                                 std::span<const HistoryRecord> history) {
    CalibratedPipeline out;
    const Frame frame = config.frame();
    for (const CriterionSpec& c : config.criteria) {
        CountTable counts = tally(history, c.id, frame, c.grades);
        LikelihoodMatrix lik = likelihoods(counts);
        BeliefMatrix bel = beliefs_from_likelihoods(lik, config.calibration_rounding);
        out.belief_by_criterion.emplace(c.id, bel);
        out.calibration.likelihood_matrices.push_back(std::move(lik));
        out.calibration.belief_matrices.push_back(std::move(bel));
    }
    return out;
}

std::vector<HistoryRecord> recommendation_records(const PipelineConfig& config,
                                                  std::span<const HistoryRecord> history) {
    const CriterionSpec* rec = config.recommendation_criterion();
    std::vector<HistoryRecord> out;
    if (!rec) return out;
    for (const HistoryRecord& r : history) {
        if (r.criterion_id == rec->id) out.push_back(r);
    }
    return out;
}

std::map<std::string, ReliabilityProfile> derive_profiles(
    const PipelineConfig& config, std::span<const HistoryRecord> rec_records) {
    std::map<std::string, ReliabilityProfile> out;
    const CriterionSpec* rec = config.recommendation_criterion();
    if (!rec) return out;
    const Frame frame = config.frame();
    std::set<std::string> experts;
    for (const HistoryRecord& r : rec_records) experts.insert(r.expert_id);
    for (const std::string& expert : experts) {
        ConfusionMatrix cm = confusion_from_history(rec_records, expert, rec->fund_grades, frame);
        out.emplace(expert, rates(cm, expert));
    }
    return out;
}

// One reliability value per expert per project, applied to all of that
// expert's evidence on the project. Per-project overrides win; then
// profile-wide overrides; then the profile derived from the track record,
// with the direction taken from the expert's recommendation grade on this
// project; finally the configured default policy.
double resolve_reliability(const PipelineConfig& config, const std::string& project_id,
                           const std::string& expert_id, const ReliabilityOverrides& overrides,
                           const std::map<std::string, ReliabilityProfile>& derived,
                           const std::optional<Recommendation>& direction) {
    auto per_project = overrides.per_project.find({project_id, expert_id});
    if (per_project != overrides.per_project.end()) return per_project->second;
    auto profile = overrides.profiles.find(expert_id);
    if (profile != overrides.profiles.end()) {
        return reliability_for(profile->second,
                               direction.value_or(Recommendation::kFund));
    }
    auto derived_it = derived.find(expert_id);
    if (derived_it != derived.end() && derived_it->second.usable && direction) {
        return reliability_for(derived_it->second, *direction);
    }
    if (config.default_reliability_policy == DefaultReliabilityPolicy::kFixed) {
        return config.default_reliability;
    }
    throw ValidationError("no reliability available for expert '" + expert_id + "' on project '" +
                          project_id + "' (no override, no usable track record)");
}

Report evaluate_all(const PipelineConfig& config, std::span<const HistoryRecord> history,
                    std::span<const Assessment> assessments,
                    const ReliabilityOverrides& overrides, bool with_baseline) {
    const CalibratedPipeline pipeline = calibrate_all(config, history);
    const auto derived = derive_profiles(config, recommendation_records(config, history));
    const CriterionSpec* rec = config.recommendation_criterion();
    const AggregationConfig agg = config.aggregation();
    const auto scales = config.grade_scales();

    std::map<std::string, std::vector<Assessment>> by_project;
    for (const Assessment& a : assessments) by_project[a.project_id].push_back(a);

    std::map<std::string, std::string> outcomes;
    for (const HistoryRecord& r : history) outcomes.emplace(r.project_id, r.outcome);

    Report report;
    report.frame_labels = config.frame_labels;
    report.config_digest = config.digest();
    report.expert_weight_mode =
        config.expert_weight_mode == ExpertWeightMode::kRawReliability ? "raw" : "normalized";
    report.calibration_rounding = rounding_name(config.calibration_rounding);
    report.history_records = static_cast<long>(history.size());
    report.assessment_records = static_cast<long>(assessments.size());

    for (const auto& [project_id, project_assessments] : by_project) {
        // Direction of each expert's recommendation on this project.
        std::map<std::string, Recommendation> directions;
        if (rec) {
            for (const Assessment& a : project_assessments) {
                if (a.criterion_id != rec->id) continue;
                directions[a.expert_id] = find_label(rec->fund_grades, a.grade)
                                              ? Recommendation::kFund
                                              : Recommendation::kNotFund;
            }
        }
        std::map<std::string, double> reliabilities;
        for (const Assessment& a : project_assessments) {
            if (reliabilities.count(a.expert_id)) continue;
            std::optional<Recommendation> direction;
            if (auto it = directions.find(a.expert_id); it != directions.end()) {
                direction = it->second;
            }
            reliabilities[a.expert_id] = resolve_reliability(config, project_id, a.expert_id,
                                                             overrides, derived, direction);
        }
        ProjectEvaluation eval = evaluate_project(project_assessments, pipeline.belief_by_criterion,
                                                  reliabilities, agg);
        ReportRow row;
        row.project_id = project_id;
        row.y = eval.funding_probability;
        if (with_baseline) row.x = additive_score(project_assessments, scales);
        for (const auto& [criterion_id, bd] : eval.per_criterion) {
            row.criterion_belief[criterion_id] = bd.singleton_masses();
        }
        row.overall_belief = eval.overall.singleton_masses();
        if (auto it = outcomes.find(project_id); it != outcomes.end()) row.outcome = it->second;
        report.rows.push_back(std::move(row));
    }
    return report;
}

void fill_ranks(Report& report) {
    std::vector<ProjectScore> scores;
    scores.reserve(report.rows.size());
    for (const ReportRow& row : report.rows) {
        ProjectScore s;
        s.project_id = row.project_id;
        s.y = row.y;
        s.x = row.x;
        s.outcome = row.outcome;
        scores.push_back(std::move(s));
    }
    auto by_y = rank(scores, RankKey::kY);
    auto by_x = rank(std::move(scores), RankKey::kX);
    std::map<std::string, std::pair<int, int>> y_ranks, x_ranks; // id -> (rank, tie group)
    for (const ProjectScore& s : by_y) y_ranks[s.project_id] = {s.rank_y, s.tie_group_y};
    for (const ProjectScore& s : by_x) x_ranks[s.project_id] = {s.rank_x, s.tie_group_x};
    for (ReportRow& row : report.rows) {
        std::tie(row.rank_y, row.tie_group_y) = y_ranks.at(row.project_id);
        std::tie(row.rank_x, row.tie_group_x) = x_ranks.at(row.project_id);
    }
    std::sort(report.rows.begin(), report.rows.end(), [](const ReportRow& a, const ReportRow& b) {
        if (a.y != b.y) return a.y > b.y;
        return a.project_id < b.project_id;
    });
}

// ---- CSV emitters ----

std::string calibration_csv(const LikelihoodMatrix& lik, const BeliefMatrix& bel) {
    std::string out = "kind,hypothesis";
    for (const auto& g : lik.grades()) out += "," + csv_field(g);
    out += "\n";
    const auto emit_rows = [&](const char* kind, auto value_at) {
        for (int i = 0; i < lik.frame().size(); ++i) {
            out += std::string(kind) + "," + csv_field(lik.frame().label(i));
            for (std::size_t j = 0; j < lik.grades().size(); ++j) {
                out += "," + fixed4(value_at(i, static_cast<int>(j)));
            }
            out += "\n";
        }
    };
    emit_rows("likelihood", [&](int i, int j) { return lik.at(i, j); });
    emit_rows("belief", [&](int i, int j) { return bel.at(i, j); });
    return out;
}

std::string profiles_csv(const std::vector<ReliabilityProfile>& profiles,
                         const std::vector<ConfusionMatrix>& matrices) {
    std::string out = "expert_id,tp,fn,fp,tn,positive_rate,negative_rate\n";
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto& p = profiles[i];
        const auto& cm = matrices[i];
        out += csv_field(p.expert_id) + "," + std::to_string(cm.tp) + "," + std::to_string(cm.fn) +
               "," + std::to_string(cm.fp) + "," + std::to_string(cm.tn) + ",";
        out += p.positive_rate ? fixed4(*p.positive_rate) : "";
        out += ",";
        out += p.negative_rate ? fixed4(*p.negative_rate) : "";
        out += "\n";
    }
    return out;
}

std::set<std::string> criteria_of(const Report& report) {
    std::set<std::string> criteria;
    for (const ReportRow& row : report.rows) {
        for (const auto& [id, bd] : row.criterion_belief) criteria.insert(id);
    }
    return criteria;
}

std::string belief_columns_header(const Report& report, const std::set<std::string>& criteria) {
    std::string out;
    for (const std::string& label : report.frame_labels) {
        out += ",overall:" + csv_field(label);
    }
    for (const std::string& id : criteria) {
        for (const std::string& label : report.frame_labels) {
            out += "," + csv_field(id + ":" + label);
        }
    }
    return out;
}

void append_belief_columns(std::string& out, const Report& report, const ReportRow& row,
                           const std::set<std::string>& criteria) {
    for (double v : row.overall_belief) out += "," + fixed4(v);
    for (const std::string& id : criteria) {
        auto it = row.criterion_belief.find(id);
        for (std::size_t i = 0; i < report.frame_labels.size(); ++i) {
            out += ",";
            if (it != row.criterion_belief.end()) out += fixed4(it->second[i]);
        }
    }
}

std::string evaluation_csv(const Report& report) {
    const auto criteria = criteria_of(report);
    std::string out = "project_id,y" + belief_columns_header(report, criteria) + "\n";
    for (const ReportRow& row : report.rows) {
        out += csv_field(row.project_id) + "," + fixed4(row.y);
        append_belief_columns(out, report, row, criteria);
        out += "\n";
    }
    return out;
}

std::string report_csv(const Report& report) {
    const auto criteria = criteria_of(report);
    std::string out = "project_id,y,x,rank_y,rank_x,tie_group_y,tie_group_x,outcome" +
                      belief_columns_header(report, criteria) + "\n";
    for (const ReportRow& row : report.rows) {
        out += csv_field(row.project_id) + "," + fixed4(row.y) + "," + fixed4(row.x) + "," +
               std::to_string(row.rank_y) + "," + std::to_string(row.rank_x) + "," +
               std::to_string(row.tie_group_y) + "," + std::to_string(row.tie_group_x) + "," +
               csv_field(row.outcome.value_or(""));
        append_belief_columns(out, report, row, criteria);
        out += "\n";
    }
    return out;
}

std::string histogram_csv(const HistogramData& data) {
    std::string out = "bin_lower,bin_upper,funded,unfunded\n";
    for (const HistogramBin& bin : data.bins) {
        out += fixed4(bin.lower) + "," + fixed4(bin.lower + data.bin_width) + "," +
               std::to_string(bin.funded) + "," + std::to_string(bin.unfunded) + "\n";
    }
    return out;
}

} // namespace

// ---- JSON forms ----

std::string calibration_to_json_text(const CalibrationSet& set) {
    json j;
    j["criteria"] = json::array();
    for (std::size_t i = 0; i < set.likelihood_matrices.size(); ++i) {
        const LikelihoodMatrix& lik = set.likelihood_matrices[i];
        const BeliefMatrix& bel = set.belief_matrices[i];
        json jc;
        jc["criterion_id"] = lik.criterion_id();
        jc["frame"] = lik.frame().labels();
        jc["grades"] = lik.grades();
        jc["rounding"] = rounding_name(bel.rounding());
        json lik_rows = json::array(), bel_rows = json::array();
        for (int r = 0; r < lik.frame().size(); ++r) {
            json lik_row = json::array(), bel_row = json::array();
            for (std::size_t c = 0; c < lik.grades().size(); ++c) {
                lik_row.push_back(lik.at(r, static_cast<int>(c)));
                bel_row.push_back(bel.at(r, static_cast<int>(c)));
            }
            lik_rows.push_back(lik_row);
            bel_rows.push_back(bel_row);
        }
        jc["likelihoods"] = lik_rows;
        jc["beliefs"] = bel_rows;
        j["criteria"].push_back(jc);
    }
    return j.dump(2) + "\n";
}

CalibrationSet calibration_from_json_text(const std::string& text) {
    CalibrationSet set;
    try {
        const json j = json::parse(text);
        for (const auto& jc : j.at("criteria")) {
            const std::string id = jc.at("criterion_id").get<std::string>();
            Frame frame(jc.at("frame").get<std::vector<std::string>>());
            auto grades = jc.at("grades").get<std::vector<std::string>>();
            auto lik = jc.at("likelihoods").get<std::vector<std::vector<double>>>();
            auto bel = jc.at("beliefs").get<std::vector<std::vector<double>>>();
            const Rounding rounding = rounding_from_name(jc.at("rounding").get<std::string>());
            set.likelihood_matrices.emplace_back(id, frame, grades, std::move(lik));
            set.belief_matrices.emplace_back(id, frame, grades, std::move(bel), rounding);
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("calibration JSON: ") + e.what());
    }
    return set;
}

std::string profiles_to_json_text(const std::vector<ReliabilityProfile>& profiles,
                                  const std::vector<ConfusionMatrix>& matrices) {
    json j;
    j["experts"] = json::array();
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto& p = profiles[i];
        const auto& cm = matrices[i];
        json je;
        je["expert_id"] = p.expert_id;
        je["tp"] = cm.tp;
        je["fn"] = cm.fn;
        je["fp"] = cm.fp;
        je["tn"] = cm.tn;
        je["positive_rate"] = p.positive_rate ? json(*p.positive_rate) : json(nullptr);
        je["negative_rate"] = p.negative_rate ? json(*p.negative_rate) : json(nullptr);
        je["usable"] = p.usable;
        j["experts"].push_back(je);
    }
    return j.dump(2) + "\n";
}

std::vector<std::pair<ReliabilityProfile, ConfusionMatrix>> profiles_from_json_text(
    const std::string& text) {
    std::vector<std::pair<ReliabilityProfile, ConfusionMatrix>> out;
    try {
        const json j = json::parse(text);
        for (const auto& je : j.at("experts")) {
            ReliabilityProfile p;
            ConfusionMatrix cm;
            p.expert_id = je.at("expert_id").get<std::string>();
            cm.tp = je.at("tp").get<long>();
            cm.fn = je.at("fn").get<long>();
            cm.fp = je.at("fp").get<long>();
            cm.tn = je.at("tn").get<long>();
            if (!je.at("positive_rate").is_null()) p.positive_rate = je.at("positive_rate").get<double>();
            if (!je.at("negative_rate").is_null()) p.negative_rate = je.at("negative_rate").get<double>();
            p.usable = je.at("usable").get<bool>();
            out.emplace_back(std::move(p), cm);
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("reliability JSON: ") + e.what());
    }
    return out;
}

std::string report_to_json_text(const Report& report) {
    json j;
    j["frame"] = report.frame_labels;
    j["config_digest"] = report.config_digest;
    j["expert_weight_mode"] = report.expert_weight_mode;
    j["calibration_rounding"] = report.calibration_rounding;
    j["history_records"] = report.history_records;
    j["assessment_records"] = report.assessment_records;
    j["projects"] = json::array();
    for (const ReportRow& row : report.rows) {
        json jr;
        jr["project_id"] = row.project_id;
        jr["y"] = row.y;
        jr["x"] = row.x;
        jr["rank_y"] = row.rank_y;
        jr["rank_x"] = row.rank_x;
        jr["tie_group_y"] = row.tie_group_y;
        jr["tie_group_x"] = row.tie_group_x;
        jr["outcome"] = row.outcome ? json(*row.outcome) : json(nullptr);
        jr["overall_belief"] = row.overall_belief;
        jr["criterion_belief"] = row.criterion_belief;
        j["projects"].push_back(jr);
    }
    return j.dump(2) + "\n";
}

Report report_from_json_text(const std::string& text) {
    Report report;
    try {
        const json j = json::parse(text);
        report.frame_labels = j.at("frame").get<std::vector<std::string>>();
        report.config_digest = j.at("config_digest").get<std::string>();
        report.expert_weight_mode = j.at("expert_weight_mode").get<std::string>();
        report.calibration_rounding = j.at("calibration_rounding").get<std::string>();
        report.history_records = j.at("history_records").get<long>();
        report.assessment_records = j.at("assessment_records").get<long>();
        for (const auto& jr : j.at("projects")) {
            ReportRow row;
            row.project_id = jr.at("project_id").get<std::string>();
            row.y = jr.at("y").get<double>();
            row.x = jr.at("x").get<double>();
            row.rank_y = jr.at("rank_y").get<int>();
            row.rank_x = jr.at("rank_x").get<int>();
            row.tie_group_y = jr.at("tie_group_y").get<int>();
            row.tie_group_x = jr.at("tie_group_x").get<int>();
            if (!jr.at("outcome").is_null()) row.outcome = jr.at("outcome").get<std::string>();
            row.overall_belief = jr.at("overall_belief").get<std::vector<double>>();
            row.criterion_belief =
                jr.at("criterion_belief").get<std::map<std::string, std::vector<double>>>();
            report.rows.push_back(std::move(row));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("report JSON: ") + e.what());
    }
    return report;
}

// ---- command orchestration ----

RunResult run_command(const std::string& command, const PipelineConfig& config,
                      const RunInputs& inputs) {
    config.validate();
    RunResult result;

    const auto require = [&](const std::optional<std::string>& path,
                             const char* flag) -> const std::string& {
        if (!path) {
            throw ValidationError("command '" + command + "' requires " + flag);
        }
        return *path;
    };

    if (command == "calibrate") {
        const auto history = parse_history(require(inputs.history_path, "--history"), config);
        const CalibratedPipeline pipeline = calibrate_all(config, history);
        for (std::size_t i = 0; i < pipeline.calibration.likelihood_matrices.size(); ++i) {
            const auto& lik = pipeline.calibration.likelihood_matrices[i];
            const auto& bel = pipeline.calibration.belief_matrices[i];
            write_file(inputs.out_dir, "calibration_" + lik.criterion_id() + ".csv",
                       calibration_csv(lik, bel), result.files_written);
        }
        write_file(inputs.out_dir, "calibration.json",
                   calibration_to_json_text(pipeline.calibration), result.files_written);
        return result;
    }

    if (command == "reliability") {
        const auto history = parse_history(require(inputs.history_path, "--history"), config);
        const CriterionSpec* rec = config.recommendation_criterion();
        if (!rec) {
            throw ValidationError("config marks no recommendation criterion");
        }
        const auto rec_records = recommendation_records(config, history);
        const Frame frame = config.frame();
        std::set<std::string> experts;
        for (const HistoryRecord& r : rec_records) experts.insert(r.expert_id);
        if (experts.empty()) {
            throw ValidationError("history has no records on recommendation criterion '" +
                                  rec->id + "'");
        }
        std::vector<ReliabilityProfile> profiles;
        std::vector<ConfusionMatrix> matrices;
        for (const std::string& expert : experts) {
            ConfusionMatrix cm = confusion_from_history(rec_records, expert, rec->fund_grades, frame);
            profiles.push_back(rates(cm, expert));
            matrices.push_back(cm);
        }
        write_file(inputs.out_dir, "reliability.csv", profiles_csv(profiles, matrices),
                   result.files_written);
        write_file(inputs.out_dir, "reliability.json", profiles_to_json_text(profiles, matrices),
                   result.files_written);
        return result;
    }

    if (command == "evaluate" || command == "rank" || command == "compare") {
        const auto history = parse_history(require(inputs.history_path, "--history"), config);
        const auto assessments =
            parse_assessments(require(inputs.assessments_path, "--assessments"), config);
        ReliabilityOverrides overrides;
        if (inputs.reliabilities_path) {
            overrides = parse_reliability_overrides(*inputs.reliabilities_path);
        }
        const bool with_baseline = command != "evaluate";
        Report report = evaluate_all(config, history, assessments, overrides, with_baseline);

        if (command == "evaluate") {
            // rows come out of a std::map, already ordered by project id
            write_file(inputs.out_dir, "evaluation.csv", evaluation_csv(report),
                       result.files_written);
            write_file(inputs.out_dir, "evaluation.json", report_to_json_text(report),
                       result.files_written);
            result.report = std::move(report);
            return result;
        }

        fill_ranks(report);
        write_file(inputs.out_dir, "report.csv", report_csv(report), result.files_written);
        write_file(inputs.out_dir, "report.json", report_to_json_text(report),
                   result.files_written);

        if (command == "compare") {
            std::vector<ProjectScore> scores;
            for (const ReportRow& row : report.rows) {
                ProjectScore s;
                s.project_id = row.project_id;
                s.y = row.y;
                s.x = row.x;
                if (!row.outcome) {
                    throw ValidationError("project '" + row.project_id +
                                          "' has no outcome in the history file; 'compare' needs "
                                          "actual outcomes");
                }
                s.outcome = row.outcome;
                scores.push_back(std::move(s));
            }
            const std::string& funded_label = config.frame_labels.front();
            const int k = std::min<int>(inputs.top_k, static_cast<int>(scores.size()));
            auto by_x = rank(scores, RankKey::kX);
            TopKReport top_er = topk_outcomes(rank(scores, RankKey::kY), k, RankKey::kY, funded_label);
            TopKReport top_base = topk_outcomes(by_x, k, RankKey::kX, funded_label);
            std::string topk_out = "method,k,funded,unfunded,undifferentiated\n";
            topk_out += "baseline," + std::to_string(top_base.k) + "," +
                        std::to_string(top_base.funded) + "," + std::to_string(top_base.unfunded) +
                        "," + std::to_string(top_base.undifferentiated) + "\n";
            topk_out += "er," + std::to_string(top_er.k) + "," + std::to_string(top_er.funded) +
                        "," + std::to_string(top_er.unfunded) + "," +
                        std::to_string(top_er.undifferentiated) + "\n";
            write_file(inputs.out_dir, "topk.csv", topk_out, result.files_written);
            HistogramData hist = histogram(by_x, inputs.bin_width, RankKey::kX, funded_label);
            write_file(inputs.out_dir, "histogram.csv", histogram_csv(hist), result.files_written);
        }
        result.report = std::move(report);
        return result;
    }

    throw ValidationError("unknown command '" + command +
                          "' (expected calibrate, reliability, evaluate, rank or compare)");
}

} // namespace erfund
