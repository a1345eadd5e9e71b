#include "erfund/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "erfund/errors.hpp"
#include "erfund/strings.hpp"

namespace erfund {

namespace {

std::string where(const std::string& path, long line) {
    return path + ":" + std::to_string(line) + ": ";
}

// Splits one CSV line; double-quoted fields may contain commas and
// doubled quotes.
std::vector<std::string> split_line(const std::string& line, const std::string& path,
                                    long lineno) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && trim(field).empty()) {
            quoted = true;
            field.clear();
        } else if (c == ',') {
            fields.push_back(trim(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) {
        throw ValidationError(where(path, lineno) + "unterminated quoted field");
    }
    fields.push_back(trim(field));
    return fields;
}

class CsvReader {
public:
    CsvReader(const std::string& path, const std::vector<std::string>& expected_header)
        : path_(path), in_(path) {
        if (!in_) {
            throw ValidationError(path + ": cannot open file");
        }
        std::string header_line;
        if (!std::getline(in_, header_line)) {
            throw ValidationError(path + ": empty file");
        }
        ++line_;
        auto header = split_line(header_line, path_, line_);
        for (const std::string& column : expected_header) {
            if (!find_label(header, column)) {
                throw ValidationError(context() + "missing column '" + column + "'");
            }
        }
        if (header.size() != expected_header.size()) {
            throw ValidationError(context() + "expected header '" + join(expected_header) + "'");
        }
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (to_lower(header[i]) != to_lower(expected_header[i])) {
                throw ValidationError(context() + "column '" + header[i] + "' out of order, " +
                                      "expected header '" + join(expected_header) + "'");
            }
        }
        columns_ = expected_header.size();
    }

    bool next(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            if (trim(line).empty()) continue;
            fields = split_line(line, path_, line_);
            if (fields.size() != columns_) {
                throw ValidationError(context() + "expected " + std::to_string(columns_) +
                                      " fields, found " + std::to_string(fields.size()));
            }
            return true;
        }
        return false;
    }

    long line() const { return line_; }
    std::string context() const { return where(path_, line_); }

private:
    static std::string join(const std::vector<std::string>& fields) {
        std::string out;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ",";
            out += fields[i];
        }
        return out;
    }

    std::string path_;
    std::ifstream in_;
    long line_ = 0;
    std::size_t columns_ = 0;
};

double parse_unit_value(const std::string& text, const std::string& context) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || !trim(end).empty()) {
        throw ValidationError(context + "not a number: '" + text + "'");
    }
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError(context + "reliability " + text + " out of range [0,1]");
    }
    return v;
}

} // namespace

std::vector<HistoryRecord> parse_history(const std::string& path, const PipelineConfig& config) {
    const Frame frame = config.frame();
    CsvReader reader(path, {"project_id", "expert_id", "criterion_id", "grade", "outcome"});
    std::vector<HistoryRecord> records;
    std::map<std::string, std::string> project_outcomes;
    std::vector<std::string> f;
    while (reader.next(f)) {
        const CriterionSpec* criterion = config.find_criterion(f[2]);
        if (!criterion) {
            throw ValidationError(reader.context() + "unknown criterion '" + f[2] + "'");
        }
        const auto grade = find_label(criterion->grades, f[3]);
        if (!grade) {
            throw ValidationError(reader.context() + "unknown grade '" + f[3] + "' for criterion '" +
                                  criterion->id + "'");
        }
        const auto outcome = frame.index_of(f[4]);
        if (!outcome) {
            throw ValidationError(reader.context() + "unknown outcome '" + f[4] + "'");
        }
        if (f[0].empty() || f[1].empty()) {
            throw ValidationError(reader.context() + "project_id and expert_id must be non-empty");
        }
        const std::string canonical_outcome = frame.label(*outcome);
        auto [it, inserted] = project_outcomes.emplace(f[0], canonical_outcome);
        if (!inserted && it->second != canonical_outcome) {
            throw ValidationError(reader.context() + "project '" + f[0] +
                                  "' has conflicting outcomes '" + it->second + "' and '" +
                                  canonical_outcome + "'");
        }
        records.push_back(HistoryRecord{
            f[0], f[1], criterion->id,
            criterion->grades[static_cast<std::size_t>(*grade)], canonical_outcome});
    }
    if (records.empty()) {
        throw ValidationError(path + ": no records");
    }
    return records;
}

std::vector<Assessment> parse_assessments(const std::string& path, const PipelineConfig& config) {
    CsvReader reader(path, {"project_id", "expert_id", "criterion_id", "grade"});
    std::vector<Assessment> assessments;
    std::set<std::string> seen;
    std::vector<std::string> f;
    while (reader.next(f)) {
        const CriterionSpec* criterion = config.find_criterion(f[2]);
        if (!criterion) {
            throw ValidationError(reader.context() + "unknown criterion '" + f[2] + "'");
        }
        const auto grade = find_label(criterion->grades, f[3]);
        if (!grade) {
            throw ValidationError(reader.context() + "unknown grade '" + f[3] + "' for criterion '" +
                                  criterion->id + "'");
        }
        if (f[0].empty() || f[1].empty()) {
            throw ValidationError(reader.context() + "project_id and expert_id must be non-empty");
        }
        const std::string key = f[0] + "\x1f" + f[1] + "\x1f" + criterion->id;
        if (!seen.insert(key).second) {
            throw ValidationError(reader.context() + "duplicate assessment of project '" + f[0] +
                                  "' by expert '" + f[1] + "' on criterion '" + criterion->id +
                                  "'");
        }
        assessments.push_back(Assessment{
            f[0], f[1], criterion->id, criterion->grades[static_cast<std::size_t>(*grade)]});
    }
    if (assessments.empty()) {
        throw ValidationError(path + ": no records");
    }
    return assessments;
}

ReliabilityOverrides parse_reliability_overrides(const std::string& path) {
    CsvReader reader(path, {"project_id", "expert_id", "reliability"});
    ReliabilityOverrides overrides;
    std::vector<std::string> f;
    while (reader.next(f)) {
        if (f[0].empty() || f[1].empty()) {
            throw ValidationError(reader.context() + "project_id and expert_id must be non-empty");
        }
        const double r = parse_unit_value(f[2], reader.context());
        if (f[0] == "*") {
            ReliabilityProfile profile;
            profile.expert_id = f[1];
            profile.positive_rate = r;
            profile.negative_rate = r;
            profile.usable = true;
            if (!overrides.profiles.emplace(f[1], profile).second) {
                throw ValidationError(reader.context() + "duplicate profile-wide reliability for '" +
                                      f[1] + "'");
            }
        } else {
            if (!overrides.per_project.emplace(std::make_pair(f[0], f[1]), r).second) {
                throw ValidationError(reader.context() + "duplicate reliability for project '" +
                                      f[0] + "', expert '" + f[1] + "'");
            }
        }
    }
    return overrides;
}

} // namespace erfund
