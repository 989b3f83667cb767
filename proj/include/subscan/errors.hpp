#pragma once

#include <stdexcept>
#include <string>

namespace subscan {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed or unsupported input (maps to CLI exit code 3).
class InputError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NonCoprimeModuli : public Error {
 public:
  using Error::Error;
};

class DegreeNotDivisible : public InputError {
 public:
  using InputError::InputError;
};

class NotSquarefree : public InputError {
 public:
  using InputError::InputError;
};

class InputIsPower : public InputError {
 public:
  using InputError::InputError;
};

class LeadingCoefficientVanishes : public Error {
 public:
  using Error::Error;
};

class NotCoprimeCofactor : public Error {
 public:
  using Error::Error;
};

class NotSplitPrime : public Error {
 public:
  using Error::Error;
};

class BadPrime : public Error {
 public:
  using Error::Error;
};

class DependentBasis : public Error {
 public:
  using Error::Error;
};

class PrimeInBasis : public Error {
 public:
  using Error::Error;
};

class ZeroExponentVector : public Error {
 public:
  using Error::Error;
};

class NoPrimeFound : public Error {
 public:
  using Error::Error;
};

/// Parse failure; `position` is a 0-based character offset into the input.
class SyntaxError : public InputError {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class MultipleVariables : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace subscan
