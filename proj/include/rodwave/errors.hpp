#pragma once

#include <stdexcept>
#include <string>

namespace rodwave {

// Argument outside the mathematical domain of an operation (e.g. a Laplace
// variable on the branch cut, a nonpositive cut coordinate, parameters that
// violate a model restriction).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A bracketing root search found no sign change.  For the resonance equation
// this cannot happen with a positive mass ratio; the error is defensive.
struct BracketError : std::runtime_error {
    explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative solver exhausted its iteration budget.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical evaluation failed outright (overflow despite scaling,
// non-finite intermediate, vanishing denominator).
struct EvaluationError : std::runtime_error {
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

// A result was computed but its error estimate exceeds the requested
// tolerance by a wide margin.  Kernel evaluations report this condition via
// result flags instead, so that grid sweeps are not aborted by one bad
// sample; the inverse-transform oracle throws.
struct AccuracyError : std::runtime_error {
    explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid run configuration (bad key, unparsable value, violated range).
// The message pinpoints the offending field or line.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rodwave
