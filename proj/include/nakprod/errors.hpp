#pragma once

#include <stdexcept>
#include <string>

namespace nakprod {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Gamma-function pole hit (non-positive integer argument).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Iterative scheme failed to meet its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Mellin-Barnes pole families cannot be separated by a vertical contour.
class ContourError : public Error {
public:
    using Error::Error;
};

/// Result (or intermediate term) exceeds floating-point range, or a series
/// enumeration exceeds its term budget.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Requested metric method is not available for the given model.
class MethodError : public Error {
public:
    using Error::Error;
};

/// Not enough data points in the asymptotic regime for a slope fit.
class RegimeError : public Error {
public:
    using Error::Error;
};

} // namespace nakprod
