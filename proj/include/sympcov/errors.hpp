#pragma once

#include <stdexcept>
#include <string>

namespace sympcov {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension is zero, odd, or inconsistent between arguments.
class InvalidDimensionError : public Error {
public:
  using Error::Error;
};

/// A mode or axis index is out of range or repeated.
class InvalidIndexError : public Error {
public:
  using Error::Error;
};

/// A matrix required to be positive definite is not.
class NotPositiveDefiniteError : public Error {
public:
  using Error::Error;
};

/// A symplectic pairing that must be bounded away from zero fell below threshold.
class DegeneratePairingError : public Error {
public:
  using Error::Error;
};

/// A candidate subspace failed the symplectic non-degeneracy certificate.
class DegenerateSubspaceError : public Error {
public:
  using Error::Error;
};

/// An exact enumeration was refused because the combination count is too large.
class CombinatorialBlowupError : public Error {
public:
  using Error::Error;
};

/// An iterative or factorization-based routine failed to meet its residual target.
class ConvergenceFailureError : public Error {
public:
  using Error::Error;
};

/// Two computation routes that must agree disagreed, or a certified invariant broke.
class InternalInconsistencyError : public Error {
public:
  using Error::Error;
};

/// Malformed input text; the message carries line/field context where available.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Structurally well-formed input that violates a documented constraint.
class ValidationError : public Error {
public:
  using Error::Error;
};

}  // namespace sympcov
