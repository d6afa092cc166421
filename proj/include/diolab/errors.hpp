#pragma once

#include <stdexcept>
#include <string>

namespace dio {

// Exit-code taxonomy used by the CLI: parse = 2, precision = 3, domain = 4.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a comparison or certification cannot be decided before the
// configured precision ceiling.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dio
