#pragma once

#include <stdexcept>
#include <string>

namespace sphsamp {

// Argument outside the mathematical domain of a function (poles, |t| > 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or inconsistent caller input (shapes, missing generations, files).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An algorithm failed to converge within its iteration budget.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A quadrature did not settle under node doubling.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operation exists only for some dimensions (explicit bases are d = 2).
class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sphsamp
