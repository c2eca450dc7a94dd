#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oresub {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class ParseError : public Error {
public:
    ParseError(std::string msg, std::size_t line, std::size_t column)
        : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          message_(std::move(msg)), line_(line), column_(column) {}
    // The description without the position.
    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

// The solver could not finish within its supported class. Callers map all of
// these to a single "incomplete" outcome.
class SolverIncomplete : public Error {
public:
    using Error::Error;
};

class FactorizationIncomplete : public SolverIncomplete {
public:
    using SolverIncomplete::SolverIncomplete;
};

class DegreeBoundExceeded : public SolverIncomplete {
public:
    using SolverIncomplete::SolverIncomplete;
};

class UnsupportedSingularity : public SolverIncomplete {
public:
    using SolverIncomplete::SolverIncomplete;
};

class UnsupportedDeltaStructure : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix is singular") {}
};

class InconsistentSystem : public Error {
public:
    using Error::Error;
};

class InternalInconsistency : public Error {
public:
    using Error::Error;
};

class NotIntegrable : public Error {
public:
    NotIntegrable(std::string first, std::string second, std::string residual)
        : Error("system is not integrable for the pair (" + first + ", " + second + ")"),
          first_(std::move(first)), second_(std::move(second)), residual_(std::move(residual)) {}
    const std::string& first_map() const noexcept { return first_; }
    const std::string& second_map() const noexcept { return second_; }
    // Human-readable rendering of the nonzero residual matrix.
    const std::string& residual() const noexcept { return residual_; }

private:
    std::string first_, second_, residual_;
};

}  // namespace oresub
