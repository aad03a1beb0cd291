#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace specbound {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejected input: malformed files, invalid matrices, bad parameters.
class InputError : public Error {
public:
    using Error::Error;
};

/// An iteration that failed to meet its stopping criterion, or a value that
/// left the representable range.
class NumericalError : public Error {
public:
    using Error::Error;
};

class EmptyMatrix : public InputError {
public:
    EmptyMatrix() : InputError("matrix has dimension 0") {}
};

class NotSquare : public InputError {
public:
    NotSquare(std::size_t rows, std::size_t cols)
        : InputError("matrix is not square: " + std::to_string(rows) + " rows, " +
                     std::to_string(cols) + " columns"),
          rows(rows), cols(cols) {}

    std::size_t rows;
    std::size_t cols;
};

class NegativeEntry : public InputError {
public:
    NegativeEntry(std::size_t i, std::size_t j)
        : InputError("negative entry at (" + std::to_string(i) + ", " + std::to_string(j) + ")"),
          row(i), col(j) {}

    std::size_t row;
    std::size_t col;
};

class NonFinite : public InputError {
public:
    NonFinite(std::size_t i, std::size_t j)
        : InputError("non-finite entry at (" + std::to_string(i) + ", " + std::to_string(j) + ")"),
          row(i), col(j) {}

    std::size_t row;
    std::size_t col;
};

class NotSymmetric : public InputError {
public:
    NotSymmetric(std::size_t i, std::size_t j)
        : InputError("matrix is not symmetric at (" + std::to_string(i) + ", " +
                     std::to_string(j) + ")"),
          row(i), col(j) {}

    std::size_t row;
    std::size_t col;
};

class InvalidArgument : public InputError {
public:
    using InputError::InputError;
};

class InvalidTolerance : public InvalidArgument {
public:
    explicit InvalidTolerance(const std::string& what)
        : InvalidArgument("invalid tolerance: " + what) {}
};

class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& reason)
        : InputError("line " + std::to_string(line) + ": " + reason), line(line), reason(reason) {}

    std::size_t line;
    std::string reason;
};

class NonFiniteKernelValue : public InputError {
public:
    NonFiniteKernelValue(std::size_t i, std::size_t j)
        : InputError("kernel evaluates to a non-finite value at grid point (" + std::to_string(i) +
                     ", " + std::to_string(j) + ")"),
          row(i), col(j) {}

    std::size_t row;
    std::size_t col;
};

class TruncationTooSmall : public InputError {
public:
    TruncationTooSmall(std::size_t n, std::size_t required)
        : InputError("shift truncation n = " + std::to_string(n) + " is below the minimum " +
                     std::to_string(required)),
          n(n), required(required) {}

    std::size_t n;
    std::size_t required;
};

class DimensionTooLarge : public InputError {
public:
    DimensionTooLarge(std::size_t n, std::size_t limit)
        : InputError("dimension " + std::to_string(n) + " exceeds the limit " +
                     std::to_string(limit)),
          n(n), limit(limit) {}

    std::size_t n;
    std::size_t limit;
};

class NoConvergence : public NumericalError {
public:
    NoConvergence(double last_estimate, std::size_t iterations, std::optional<int> level = {})
        : NumericalError(message(last_estimate, iterations, level)),
          last_estimate(last_estimate), iterations(iterations), level(level) {}

    /// Same failure, tagged with the squaring level it occurred at.
    [[nodiscard]] NoConvergence at_level(int k) const {
        return NoConvergence(last_estimate, iterations, k);
    }

    double last_estimate;
    std::size_t iterations;
    std::optional<int> level;

private:
    static std::string message(double est, std::size_t it, std::optional<int> level) {
        std::string s = "eigenvalue iteration did not converge after " + std::to_string(it) +
                        " iterations (last estimate " + std::to_string(est) + ")";
        if (level) {
            s += " at level k = " + std::to_string(*level);
        }
        return s;
    }
};

class NoStabilization : public NumericalError {
public:
    NoStabilization(double last_estimate, double last_change, int levels)
        : NumericalError("Gelfand estimate did not stabilize within " + std::to_string(levels) +
                         " levels (last estimate " + std::to_string(last_estimate) +
                         ", last change " + std::to_string(last_change) + ")"),
          last_estimate(last_estimate), last_change(last_change), levels(levels) {}

    double last_estimate;
    double last_change;
    int levels;
};

class Overflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace specbound
