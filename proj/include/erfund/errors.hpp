#pragma once

#include <stdexcept>
#include <string>

namespace erfund {

// Rejected input: bad labels, out-of-range values, malformed files.
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input for which no result is defined: complete conflict,
// no effective evidence. The CLI maps this to exit code 2.
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace erfund
