#pragma once

#include <stdexcept>
#include <string>

namespace fracspectral {

// Argument outside an operation's documented domain.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Gamma-type pole hit (non-positive integer argument).
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// Series or integral diverges for the requested arguments.
struct DivergenceError : std::domain_error {
    explicit DivergenceError(const std::string& what) : std::domain_error(what) {}
};

// A computation could not reach its accuracy contract.
struct AccuracyError : std::runtime_error {
    explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure inside a solver (non-convergence, singular system).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fracspectral
