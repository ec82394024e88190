#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meshrel {

/// Raised for malformed or inconsistent input data.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input error tied to a line of a text file (1-based line numbers).
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace meshrel
