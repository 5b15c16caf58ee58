#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bippr {

/// Raised when an argument lies outside the domain of an operation
/// (isolated endpoint, out-of-range node, alpha not in (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised by the edge-list loader; carries the 1-based offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Raised when a graph file cannot be opened or read.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Throws DomainError unless 0 < alpha < 1.
void require_teleport(double alpha);

}  // namespace detail

}  // namespace bippr
