#pragma once

#include <stdexcept>
#include <string>

namespace relosc {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Gamma function evaluated at a non-positive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an operation (x <= 0, negative norms, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DegreeLimitError : public Error {
 public:
  using Error::Error;
};

// Operator chain needs more imaginary displacement than the operand allows.
class StripExhaustedError : public Error {
 public:
  using Error::Error;
};

// A multiplier was evaluated at one of its declared isolated singular points.
class SingularPointError : public Error {
 public:
  using Error::Error;
};

// Inner discriminant 1 - 8 g0 w0^2 - 4 w0^2 L(L+1) is negative.
class DiscriminantError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class ZeroStateError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace relosc
