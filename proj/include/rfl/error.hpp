#pragma once

#include <stdexcept>
#include <string>

namespace rfl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed source description. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An operation was called on an input outside its domain
/// (e.g. dependence test on a non-simple source).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A desk-scale computation would exceed its configured limit.
class CapExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace rfl
