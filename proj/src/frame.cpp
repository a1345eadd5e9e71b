#include "erfund/frame.hpp"

#include <set>

#include "erfund/errors.hpp"
#include "erfund/strings.hpp"

namespace erfund {

Frame::Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.size() < 2 || labels_.size() > kMaxHypotheses) {
        throw ValidationError("frame must have between 2 and 16 hypotheses, got " +
                              std::to_string(labels_.size()));
    }
    std::set<std::string> seen;
    for (const auto& label : labels_) {
        if (trim(label).empty()) {
            throw ValidationError("frame hypothesis labels must be non-empty");
        }
        if (!seen.insert(to_lower(trim(label))).second) {
            throw ValidationError("duplicate hypothesis label '" + label + "'");
        }
    }
}

std::optional<int> Frame::index_of(std::string_view label) const {
    return find_label(labels_, label);
}

std::string Frame::subset_name(std::uint32_t subset) const {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < size(); ++i) {
        if (subset & singleton(i)) {
            if (!first) out += ",";
            out += labels_[static_cast<std::size_t>(i)];
            first = false;
        }
    }
    out += "}";
    return out;
}

} // namespace erfund
