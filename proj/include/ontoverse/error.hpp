#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ontoverse {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An instance is larger than the brute-force procedures accept.
class CapExceeded : public Error {
public:
    using Error::Error;
};

// Malformed input text. line() is 1-based; 0 when no line applies.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line), detail_(what) {}

    // Same error, reported against a file.
    ParseError(const std::string& file, const ParseError& e)
        : Error(file + ": " + e.what()), line_(e.line_), detail_(e.detail_) {}

    std::size_t line() const noexcept { return line_; }
    // The message without the line prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

} // namespace ontoverse
