#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace ctrw {

// Base of every error thrown by the library. The CLI maps subclasses to exit
// codes: ValidationError -> 2, AccuracyError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A model, contract or density parameter violates its invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

class ParameterError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InfeasibleMomentsError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DivergentMomentError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// h~(-i) <= 1 or infinite: no positive finite risk-neutral intensity exists.
class InadmissibleDensityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// r = 0 together with h~(-i) = 1. The martingale condition then holds for any
// sojourn distribution and the engine does not price that case.
class ArbitrarySojournError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class UnsupportedFamilyError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class OutOfBandError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Argument at (or beyond) a singularity of a closed-form expression.
class DomainError : public Error {
public:
    using Error::Error;
};

class BranchError : public Error {
public:
    using Error::Error;
};

// A numerical routine could not certify its tolerance. Carries the best
// estimate obtained and the error bound that was reached.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double best_estimate, double error_bound)
        : Error(what + " (best estimate " + format(best_estimate) + ", error bound " + format(error_bound) + ")"),
          best_estimate_(best_estimate),
          error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    static std::string format(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return buf;
    }

    double best_estimate_;
    double error_bound_;
};

class TailBoundViolation : public AccuracyError {
public:
    using AccuracyError::AccuracyError;
};

class NoConvergenceError : public AccuracyError {
public:
    using AccuracyError::AccuracyError;
};

}  // namespace ctrw
