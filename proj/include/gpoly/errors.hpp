#pragma once

#include <stdexcept>
#include <string>

namespace gpoly {

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Adaptive quadrature exhausted its subdivision budget above tolerance.
struct NonConvergence : std::runtime_error {
    NonConvergence(const std::string& what, double value, double error)
        : std::runtime_error(what), best_value(value), best_error(error) {}
    double best_value;
    double best_error;
};

/// Pivot / active-set breakdown in a linear solver; signaled, never guessed.
struct NumericalDegeneracy : std::runtime_error {
    explicit NumericalDegeneracy(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Declared half-line decay class cannot bound the tail (e.g. order p <= 1).
struct InvalidDecay : std::domain_error {
    explicit InvalidDecay(const std::string& what) : std::domain_error(what) {}
};

} // namespace gpoly
