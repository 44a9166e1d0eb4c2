#pragma once

#include <stdexcept>
#include <string>

namespace svesim {

/// Argument outside the admissible parameter range of an operation.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation point outside the domain (e.g. t <= 0 for a singular kernel).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation point outside a tabulated range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Structural requirement of an algorithm not met by its inputs, e.g. a
/// kernel with K(0+) = +inf handed to the splitting scheme.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numerical estimate could not be formed (degenerate data).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace svesim
