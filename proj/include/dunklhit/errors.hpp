#pragma once

#include <stdexcept>
#include <string>

namespace dunklhit {

// Base of every library error. `what()` names the violated precondition.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid input: maps to CLI exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class BoundaryError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class OddDimension : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class OddRank : public OddDimension {
public:
    using OddDimension::OddDimension;
};

class NonHomogeneousError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class PoleError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NoHittingError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Numerical failure: maps to CLI exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IntegrationBudgetExceeded : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ExtrapolationUnstable : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularCalibration : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RangeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Broken internal invariant (never valid input).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace dunklhit
