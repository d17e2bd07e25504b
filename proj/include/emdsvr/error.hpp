#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace emdsvr {

/// Invalid argument passed to an operation (precondition violated).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Components of a composite value disagree with each other (e.g. lengths).
class StructuralError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Not enough extrema to build an upper/lower envelope pair.
/// Sifting treats this as "the candidate is a residue".
class DegenerateEnvelopeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two extrema used by an end-condition formula share the same time index.
class CoincidentExtremaError : public ArgumentError {
public:
    using ArgumentError::ArgumentError;
};

/// A scale-free metric whose scale is zero (constant estimation sample).
class UndefinedScaleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : std::runtime_error(what + " (row " + std::to_string(row) + ", column " +
                             std::to_string(column) + ")"),
          row_(row),
          column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace emdsvr
