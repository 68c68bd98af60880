#pragma once

#include <stdexcept>
#include <string>

#include "specband/scalar.hpp"

namespace specband {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// No conversion ladder connects the two spaces (e.g. Taylor <-> Chebyshev).
class NoConversionError : public Error {
  public:
    using Error::Error;
};

/// A banded block cannot hold the bands of the operator written into it.
class BandMismatchError : public Error {
  public:
    using Error::Error;
};

/// Evaluation point outside the space's domain.
class DomainError : public Error {
  public:
    using Error::Error;
};

class InvalidArgumentError : public Error {
  public:
    using Error::Error;
};

/// Adaptive solve hit its cap before the truncation criterion was met.
class NoConvergenceError : public Error {
  public:
    NoConvergenceError(const std::string& what, Index max_n)
        : Error(what), max_n(max_n) {}
    Index max_n;
};

class SingularError : public Error {
  public:
    using Error::Error;
};

class SingularBoundaryBlockError : public Error {
  public:
    using Error::Error;
};

/// Recovered solution of a real problem carried non-negligible imaginary parts.
class ResidualImagError : public Error {
  public:
    using Error::Error;
};

}  // namespace specband
