#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sgmatch {

/// Shapes of two operands do not fit together.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A value lies outside the domain an operation accepts (NaN entries, self-loops, non-injective maps).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Inconsistent counts or probabilities (e > min(c, d), s > K, p outside [0, 1], ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Malformed input file. `line()` is 1-based; 0 means the error is not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An exhaustive search would visit more candidates than allowed.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(double cardinality, std::uint64_t budget)
        : std::runtime_error("enumeration of " + std::to_string(cardinality) +
                             " candidates exceeds budget " + std::to_string(budget)),
          cardinality_(cardinality), budget_(budget) {}
    double cardinality() const noexcept { return cardinality_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    double cardinality_;
    std::uint64_t budget_;
};

}  // namespace sgmatch
