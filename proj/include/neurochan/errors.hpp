#pragma once

#include <stdexcept>
#include <string>

namespace neurochan {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform (non-square, mismatched rows, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A scalar argument is outside the operation's domain (T <= 0, h <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must have full row rank is numerically rank deficient.
class RankError : public Error {
 public:
  using Error::Error;
};

/// No P-invariant lift exists for the requested channel set.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its size guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The request lies outside the cases the library solves.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// The supplied lift does not satisfy B * Ahat = A.
class InvalidLiftError : public Error {
 public:
  using Error::Error;
};

/// A simulated trajectory left the divergence guard.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace neurochan
