#pragma once

#include <stdexcept>
#include <string>

namespace bethe_overlap {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rational kernel or set product was evaluated at one of its poles.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Exact division by zero.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Exact and floating scalars were combined in one expression.
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

/// A (1 - z)^k prefactor with negative k was requested at z = 1.
class PrefactorSingular : public Error {
 public:
  using Error::Error;
};

/// A determinant larger than the configured cap was requested.
class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The twist parameters make mu singular or violate the decomposition constraint.
class DegenerateTwist : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// t(0) is not invertible, so no local Hamiltonian can be extracted.
class SingularAtZero : public Error {
 public:
  using Error::Error;
};

class JacobianSingular : public Error {
 public:
  using Error::Error;
};

/// The supplied roots do not satisfy the twisted Bethe equations.
class NotOnShell : public Error {
 public:
  using Error::Error;
};

/// The twist constraint alpha = -rho2/rho1 does not hold.
class ConstraintViolated : public Error {
 public:
  using Error::Error;
};

/// Roots do not satisfy the reduced (alpha = 1) Bethe system.
class ReducedSystemViolated : public Error {
 public:
  using Error::Error;
};

class EigenvalueZeroAtOrigin : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bethe_overlap
