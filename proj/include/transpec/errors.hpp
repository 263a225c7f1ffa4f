#pragma once

#include <stdexcept>
#include <string>

namespace transpec {

/// Bad input: malformed data, violated preconditions. The CLI maps these to exit code 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A well-formed request that cannot be carried out numerically. CLI exit code 2.
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DomainTooSmallError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class AliasingError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ZeroFunctionError : public ComputationError {
public:
    using ComputationError::ComputationError;
};

class EmptySetError : public ComputationError {
public:
    using ComputationError::ComputationError;
};

class DegenerateModeError : public ComputationError {
public:
    using ComputationError::ComputationError;
};

/// Raised when a covariance section or kernel fails the PSD test; carries the offending eigenvalue.
class NotPositiveSemidefiniteError : public ComputationError {
public:
    NotPositiveSemidefiniteError(const std::string& what, double min_eigenvalue)
        : ComputationError(what + " (minimum eigenvalue " + std::to_string(min_eigenvalue) + ")"),
          min_eigenvalue_(min_eigenvalue) {}

    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

}  // namespace transpec
