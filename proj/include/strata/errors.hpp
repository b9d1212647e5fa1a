#pragma once

#include <stdexcept>
#include <string>

namespace strata {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invariant-violating input (bad graph, bad class, bad range).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Two classes with different ambient signatures were combined.
class SignatureMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// The operation is outside the supported contract (e.g. mul_psi on a boundary graph).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A desk-scale size guard was exceeded.
class SizeGuardExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace strata
