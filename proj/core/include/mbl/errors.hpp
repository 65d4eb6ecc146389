#pragma once

#include <stdexcept>
#include <string>

namespace mbl {

// Structural misuse: operands on different spaces, wrong shapes.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A SystemParams (or derived input) violates its invariants.
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Base for failures that come out of the numerics rather than the inputs.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class SingularityError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

// g2(0) requested for a state with (numerically) zero occupation.
class UndefinedCorrelationError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

class IntegrationError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

// Malformed RunConfig document or command line.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace mbl
