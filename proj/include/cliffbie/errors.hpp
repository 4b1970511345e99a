#pragma once

#include <stdexcept>
#include <string>

namespace cliffbie {

/// Caller violated an API precondition (dimension mismatch, bad resolution,
/// unknown experiment or density name, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A kernel was evaluated at (or numerically at) its pole.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An off-surface evaluator was asked for a point inside the guard band.
class NearSurfaceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested kernel order or operator is not defined in this dimension
/// (e.g. the Laplace kernel for m = 2).
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cliffbie
