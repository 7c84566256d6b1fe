#pragma once

#include <stdexcept>
#include <string>

namespace br {

/// Base class for all solver errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A workspace request would push the live count past the linear budget.
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

/// An iterative eigenvalue sweep or secular root search failed to converge.
class NoConvergence : public Error {
public:
    explicit NoConvergence(const std::string& what) : Error(what) {}
};

/// The secular function was evaluated exactly at a pole.
class PoleHit : public Error {
public:
    explicit PoleHit(const std::string& what) : Error(what) {}
};

/// A reconstructed secular denominator is exactly zero.
class ZeroDenominator : public Error {
public:
    explicit ZeroDenominator(const std::string& what) : Error(what) {}
};

/// A compact root violates its well-formedness rules.
class MalformedCompactRoot : public Error {
public:
    explicit MalformedCompactRoot(const std::string& what) : Error(what) {}
};

/// An argument lies outside the mathematical domain of a formula.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Array sizes passed to an operation do not agree.
class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

/// A structural precondition (tree shape, node kind, index range) was violated.
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(what) {}
};

} // namespace br
