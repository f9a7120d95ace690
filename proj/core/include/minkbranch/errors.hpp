#pragma once

#include <stdexcept>
#include <string>

namespace minkbranch {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Caller violated a documented precondition (e.g. a negative weight).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Iterative method failed to converge.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// Quadrature could not reach the requested accuracy on the given grid.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, int suggested_panels)
        : Error(what), suggested_panels_(suggested_panels) {}

    [[nodiscard]] int suggested_panels() const noexcept { return suggested_panels_; }

private:
    int suggested_panels_;
};

/// Quadrature produced a non-finite value.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Adaptive step size fell below the representable minimum.
class StiffnessError : public Error {
public:
    StiffnessError(const std::string& what, double lambda, double radius)
        : Error(what), lambda_(lambda), radius_(radius) {}

    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    [[nodiscard]] double radius() const noexcept { return radius_; }

private:
    double lambda_;
    double radius_;
};

/// Regularization index n with 1/n >= R.
class InvalidRegularization : public DomainError {
public:
    using DomainError::DomainError;
};

/// Explicit threshold cannot be formed for this instance.
class BoundUnavailable : public Error {
public:
    using Error::Error;
};

/// Interior minimum of lambda(s) sits on the edge of the sampled grid.
class FoldNotBracketed : public Error {
public:
    using Error::Error;
};

/// Too many branch points without a solution.
class SweepFailure : public Error {
public:
    using Error::Error;
};

}  // namespace minkbranch
