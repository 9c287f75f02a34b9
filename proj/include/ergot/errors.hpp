#pragma once

#include <stdexcept>
#include <string>

namespace ergot {

/// Error classes double as CLI exit codes.
enum class ErrorClass : int {
    config = 2,
    domain = 3,
    numerical = 4,
    infeasible = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), class_(cls) {}
    ErrorClass error_class() const noexcept { return class_; }

private:
    ErrorClass class_;
};

/// Malformed or incomplete configuration.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorClass::config, what) {}
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorClass::domain, what) {}
};

/// Reducible or otherwise degenerate finite chain.
class StructuralError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Enumeration above the desk-scale cap.
class ResourceError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Iteration failed to converge, or two routes that must agree did not.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what, double residual = 0.0)
        : Error(ErrorClass::numerical, what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// No dual candidate survived the admissibility filters.
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& what) : Error(ErrorClass::infeasible, what) {}
};

}  // namespace ergot
