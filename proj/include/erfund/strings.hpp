#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace erfund {

inline std::string trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto begin = s.find_first_not_of(ws);
    if (begin == std::string_view::npos) return {};
    auto end = s.find_last_not_of(ws);
    return std::string(s.substr(begin, end - begin + 1));
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Case-insensitive, whitespace-trimmed lookup; the vocabulary entry is the
// canonical spelling.
inline std::optional<int> find_label(const std::vector<std::string>& vocabulary,
                                     std::string_view label) {
    const std::string needle = to_lower(trim(label));
    for (std::size_t i = 0; i < vocabulary.size(); ++i) {
        if (to_lower(trim(vocabulary[i])) == needle) return static_cast<int>(i);
    }
    return std::nullopt;
}

} // namespace erfund
