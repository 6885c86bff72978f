#pragma once

#include <stdexcept>
#include <string>

namespace sdesign {

// Argument outside the mathematical domain of an operation (d = 0, element
// not in [1, n-1], ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Harmonic degree outside {1, 2, 3}.
class UnsupportedDegreeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Matrix or polynomial shapes that do not fit together.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An input design does not have the property a construction requires
// (wrong strength, non-constant block norms, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A block construction whose scaling coefficient would be imaginary.
class InfeasibleCoefficientError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operation called on a (d, n) cell that is not constructible, or other
// misuse of the planner / CLI.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed design file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sdesign
