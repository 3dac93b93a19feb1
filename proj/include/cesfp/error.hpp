#pragma once

#include <stdexcept>
#include <string>

namespace cesfp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A result or intermediate is not representable as a finite double.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Two grid functions (or a grid function and an operator) disagree on the grid.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A parameter lies on the wrong side of one of the solvability bounds.
class BoundViolation : public Error {
public:
    BoundViolation(std::string which, double limit, double given);

    /// Machine-readable name of the violated bound, e.g. "b <= -2".
    const std::string& which() const noexcept { return which_; }
    double limit() const noexcept { return limit_; }
    double given() const noexcept { return given_; }

private:
    std::string which_;
    double limit_;
    double given_;
};

/// The u-function is not strictly positive at `x`.
class PositivityLoss : public Error {
public:
    explicit PositivityLoss(double x);
    double x() const noexcept { return x_; }

private:
    double x_;
};

/// The integration window is too small to decide square-integrability.
class InconclusiveWindow : public Error {
public:
    using Error::Error;
};

/// Spectral sum cannot reach the requested tolerance within the mode cap.
class TruncationFailure : public Error {
public:
    TruncationFailure(double requested, double smallest_reachable);
    double requested() const noexcept { return requested_; }
    double smallest_reachable() const noexcept { return smallest_reachable_; }

private:
    double requested_;
    double smallest_reachable_;
};

/// Broken-SUSY systems have no stationary distribution.
class NotStationary : public Error {
public:
    using Error::Error;
};

/// Crank-Nicolson run lost (or created) probability beyond tolerance.
class MassLossError : public Error {
public:
    using Error::Error;
};

/// A Monte Carlo path left the representable region.
class BlowUpError : public Error {
public:
    using Error::Error;
};

}  // namespace cesfp
