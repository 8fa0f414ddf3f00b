#pragma once

#include <stdexcept>
#include <string>

namespace qubism {

// Base for every error raised by the library. The CLI maps UsageError and
// its subclasses to exit code 2 and NumericalError to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid arguments, dimension mismatches, out-of-range parameters.
class UsageError : public Error {
public:
    using Error::Error;
};

class RangeError : public UsageError {
public:
    using UsageError::UsageError;
};

class DimensionError : public UsageError {
public:
    using UsageError::UsageError;
};

// Malformed QSV1 input; the message names the offending line.
class ParseError : public UsageError {
public:
    ParseError(std::size_t line, const std::string &what)
        : UsageError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string &what, double best_residual)
        : NumericalError(what), best_residual_(best_residual) {}
    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

} // namespace qubism
