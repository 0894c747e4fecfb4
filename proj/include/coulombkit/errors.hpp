#pragma once

#include <stdexcept>
#include <string>

namespace ck {

// Exit codes used by the CLI: 2 schema/input, 3 bad theory, 4 unsupported,
// 5 internal invariant violation.

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BadTheoryError : std::runtime_error {
    explicit BadTheoryError(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvariantError : std::runtime_error {
    explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ExprParseError : std::runtime_error {
    ExprParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

}  // namespace ck
