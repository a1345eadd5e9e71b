#include "erfund/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "erfund/errors.hpp"
#include "erfund/strings.hpp"

namespace erfund {

namespace {

using nlohmann::json;

std::string mode_name(ExpertWeightMode mode) {
    return mode == ExpertWeightMode::kRawReliability ? "raw" : "normalized";
}

std::string rounding_name(Rounding rounding) {
    return rounding == Rounding::kFourDecimals ? "4dp" : "none";
}

} // namespace

void PipelineConfig::validate() const {
    Frame check(frame_labels); // throws on bad labels
    if (criteria.empty()) {
        throw ValidationError("config must define at least one criterion");
    }
    std::set<std::string> ids;
    int recommendation_count = 0;
    bool any_positive_weight = false;
    for (const CriterionSpec& c : criteria) {
        if (trim(c.id).empty()) throw ValidationError("criterion id must be non-empty");
        if (!ids.insert(to_lower(trim(c.id))).second) {
            throw ValidationError("duplicate criterion id '" + c.id + "'");
        }
        if (c.grades.empty()) {
            throw ValidationError("criterion '" + c.id + "' has no grades");
        }
        std::set<std::string> grade_set;
        for (const auto& g : c.grades) {
            if (trim(g).empty()) throw ValidationError("criterion '" + c.id + "' has an empty grade");
            if (!grade_set.insert(to_lower(trim(g))).second) {
                throw ValidationError("criterion '" + c.id + "' has duplicate grade '" + g + "'");
            }
        }
        if (!(c.weight >= 0.0)) {
            throw ValidationError("criterion '" + c.id + "' weight must be nonnegative");
        }
        if (c.weight > 0.0) any_positive_weight = true;
        if (c.grade_scores.size() != c.grades.size()) {
            throw ValidationError("criterion '" + c.id +
                                  "' needs one baseline score per grade");
        }
        if (c.recommendation) {
            ++recommendation_count;
            if (c.fund_grades.empty()) {
                throw ValidationError("recommendation criterion '" + c.id +
                                      "' must list its fund grades");
            }
            for (const auto& g : c.fund_grades) {
                if (!find_label(c.grades, g)) {
                    throw ValidationError("fund grade '" + g + "' is not a grade of criterion '" +
                                          c.id + "'");
                }
            }
        }
    }
    if (!any_positive_weight) {
        throw ValidationError("at least one criterion weight must be positive");
    }
    if (recommendation_count > 1) {
        throw ValidationError("at most one criterion may be the recommendation criterion");
    }
    if (default_reliability_policy == DefaultReliabilityPolicy::kFixed &&
        (default_reliability < 0.0 || default_reliability > 1.0)) {
        throw ValidationError("default reliability must lie in [0,1]");
    }
}

const CriterionSpec* PipelineConfig::find_criterion(const std::string& id_or_alias) const {
    for (const CriterionSpec& c : criteria) {
        if (to_lower(trim(c.id)) == to_lower(trim(id_or_alias))) return &c;
    }
    return nullptr;
}

const CriterionSpec* PipelineConfig::recommendation_criterion() const {
    for (const CriterionSpec& c : criteria) {
        if (c.recommendation) return &c;
    }
    return nullptr;
}

AggregationConfig PipelineConfig::aggregation() const {
    AggregationConfig out;
    for (const CriterionSpec& c : criteria) out.criterion_weights[c.id] = c.weight;
    out.expert_weight_mode = expert_weight_mode;
    out.calibration_rounding = calibration_rounding;
    return out;
}

std::map<std::string, GradeScale> PipelineConfig::grade_scales() const {
    std::map<std::string, GradeScale> out;
    for (const CriterionSpec& c : criteria) out[c.id] = GradeScale{c.grades, c.grade_scores};
    return out;
}

std::string PipelineConfig::digest() const {
    // FNV-1a over the canonical JSON form.
    const std::string text = config_to_json_text(*this);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

PipelineConfig nsfc_case_study_config() {
    PipelineConfig config;
    config.frame_labels = {"Funded", "Unfunded"};
    CriterionSpec c1;
    c1.id = "C1";
    c1.name = "Comprehensive evaluation level";
    c1.grades = {"Poor", "Average", "Good", "Excellent"};
    c1.weight = 2.0;
    c1.grade_scores = {1, 2, 3, 4};
    CriterionSpec c2;
    c2.id = "C2";
    c2.name = "Funding recommendation";
    c2.grades = {"Not fund", "Fund", "Fund with priority"};
    c2.weight = 1.0;
    c2.grade_scores = {0, 1, 2};
    c2.recommendation = true;
    c2.fund_grades = {"Fund", "Fund with priority"};
    config.criteria = {c1, c2};
    return config;
}

PipelineConfig config_from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(origin + ": invalid JSON: " + e.what());
    }
    PipelineConfig config;
    try {
        config.frame_labels = j.at("frame").get<std::vector<std::string>>();
        for (const auto& jc : j.at("criteria")) {
            CriterionSpec c;
            c.id = jc.at("id").get<std::string>();
            c.name = jc.value("name", std::string{});
            c.grades = jc.at("grades").get<std::vector<std::string>>();
            c.weight = jc.value("weight", 1.0);
            c.grade_scores = jc.at("grade_scores").get<std::vector<double>>();
            c.recommendation = jc.value("recommendation", false);
            if (jc.contains("fund_grades")) {
                c.fund_grades = jc.at("fund_grades").get<std::vector<std::string>>();
            }
            config.criteria.push_back(std::move(c));
        }
        const std::string mode = j.value("expert_weight_mode", "raw");
        if (mode == "raw") {
            config.expert_weight_mode = ExpertWeightMode::kRawReliability;
        } else if (mode == "normalized") {
            config.expert_weight_mode = ExpertWeightMode::kNormalizedReliability;
        } else {
            throw ValidationError(origin + ": expert_weight_mode must be 'raw' or 'normalized'");
        }
        const std::string rounding = j.value("calibration_rounding", "none");
        if (rounding == "none") {
            config.calibration_rounding = Rounding::kNone;
        } else if (rounding == "4dp") {
            config.calibration_rounding = Rounding::kFourDecimals;
        } else {
            throw ValidationError(origin + ": calibration_rounding must be 'none' or '4dp'");
        }
        if (j.contains("default_reliability")) {
            const auto& dr = j.at("default_reliability");
            if (dr.is_string() && dr.get<std::string>() == "error") {
                config.default_reliability_policy = DefaultReliabilityPolicy::kError;
            } else if (dr.is_number()) {
                config.default_reliability_policy = DefaultReliabilityPolicy::kFixed;
                config.default_reliability = dr.get<double>();
            } else {
                throw ValidationError(origin +
                                      ": default_reliability must be 'error' or a number in [0,1]");
            }
        }
    } catch (const json::exception& e) {
        throw ValidationError(origin + ": " + e.what());
    }
    config.validate();
    return config;
}

std::string config_to_json_text(const PipelineConfig& config) {
    json j;
    j["frame"] = config.frame_labels;
    j["criteria"] = json::array();
    for (const CriterionSpec& c : config.criteria) {
        json jc;
        jc["id"] = c.id;
        if (!c.name.empty()) jc["name"] = c.name;
        jc["grades"] = c.grades;
        jc["weight"] = c.weight;
        jc["grade_scores"] = c.grade_scores;
        if (c.recommendation) {
            jc["recommendation"] = true;
            jc["fund_grades"] = c.fund_grades;
        }
        j["criteria"].push_back(jc);
    }
    j["expert_weight_mode"] = mode_name(config.expert_weight_mode);
    j["calibration_rounding"] = rounding_name(config.calibration_rounding);
    if (config.default_reliability_policy == DefaultReliabilityPolicy::kError) {
        j["default_reliability"] = "error";
    } else {
        j["default_reliability"] = config.default_reliability;
    }
    return j.dump(2) + "\n";
}

PipelineConfig load_config(const std::string& path_or_preset) {
    if (path_or_preset == "nsfc-case-study") {
        PipelineConfig config = nsfc_case_study_config();
        config.validate();
        return config;
    }
    std::ifstream in(path_or_preset);
    if (!in) {
        throw ValidationError(path_or_preset + ": cannot open config file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json_text(buffer.str(), path_or_preset);
}

} // namespace erfund
