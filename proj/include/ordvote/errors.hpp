#pragma once

#include <stdexcept>
#include <string>

namespace ordvote {

// Error taxonomy. The CLI maps each class to a distinct exit status:
// parse -> 2, configuration -> 3, capacity -> 4, verification failure -> 5.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// malformed value (wrong length, empty vector, mismatched m)
struct StructuralError : Error {
    explicit StructuralError(const std::string& msg) : Error(msg) {}
};

// ballot outside the rule's allowed set
struct RuleViolationError : Error {
    explicit RuleViolationError(const std::string& msg) : Error(msg) {}
};

// operation outside a metric's domain (e.g. EMD on unequal totals)
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// enumeration would exceed a declared cap; message names the bound reached
struct CapacityError : Error {
    explicit CapacityError(const std::string& msg) : Error(msg) {}
};

// weak order where a unique resolution is required
struct AmbiguityError : Error {
    explicit AmbiguityError(const std::string& msg) : Error(msg) {}
};

// inconsistent run configuration (heuristic/rule mismatch etc.)
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// malformed input file; carries a 1-based line number
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

}  // namespace ordvote
