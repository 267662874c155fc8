#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qit {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand dimensions do not conform (or subsystem dims disagree with a matrix side).
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Result would exceed the dense-storage resource guard.
class SizeError : public Error {
public:
    using Error::Error;
};

/// A precondition on the input was violated (non-Hermitian, bad distribution, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

/// A function was evaluated outside its domain (log of zero, T <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical consistency check failed (imaginary residue, non-convergence).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed text or JSON input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(line == 0 ? what
                          : "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed input that violates a domain invariant; the message names the invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Compact rendering of a number for error messages ("0.9", "1e-07").
inline std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

}  // namespace qit
