#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace erfund {

// Frame of discernment: an ordered set of mutually exclusive, collectively
// exhaustive hypothesis labels. Subsets of the frame are represented as
// bitmasks with bit i standing for hypothesis i, which caps the size at 16.
class Frame {
public:
    static constexpr int kMaxHypotheses = 16;

    explicit Frame(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<int> index_of(std::string_view label) const;

    std::uint32_t full_set() const { return (1u << labels_.size()) - 1u; }
    std::uint32_t singleton(int i) const { return 1u << i; }
    bool contains(std::uint32_t subset) const { return (subset & ~full_set()) == 0; }

    // Readable name of a subset, e.g. "{Funded}" or "{Funded,Unfunded}".
    std::string subset_name(std::uint32_t subset) const;

    bool operator==(const Frame& other) const { return labels_ == other.labels_; }
    bool operator!=(const Frame& other) const { return !(*this == other); }

private:
    std::vector<std::string> labels_;
};

} // namespace erfund
