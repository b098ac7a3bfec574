#pragma once

#include <stdexcept>
#include <string>

namespace anisolag {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or matrix shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A point or sub-box lies outside the domain it must belong to.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parameters violate an operation's preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An expression string or a config file could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Symbolic differentiation hit abs/min/max on an x-dependent subtree.
class NonDifferentiableError : public Error {
 public:
  using Error::Error;
};

/// Evaluation produced NaN or infinity.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

}  // namespace anisolag
