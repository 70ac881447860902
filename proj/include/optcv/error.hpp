#pragma once

#include <stdexcept>
#include <string>

namespace optcv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sizes or lengths that do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input that is well-formed but too degenerate to compute with
/// (too few distinct points, a single group, an empty training set, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// XᵀX is numerically singular.
class SingularDesign : public Error {
 public:
  using Error::Error;
};

/// A covariance model whose parameters violate its bounds.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

}  // namespace optcv
