#pragma once

#include <stdexcept>
#include <string>

namespace sfc {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different algebras or have incompatible sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Inversion of a zero or numerically null hypercomplex element.
class SingularElementError : public Error {
 public:
  using Error::Error;
};

/// A direction that must be a unit imaginary vector is not one.
class InvalidUnitError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter lies on (or numerically too close to) the S-spectrum.
class SpectralPointError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (malformed data, bad flag).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Contour construction or validation failed: spheres cannot be separated,
/// or a contour passes too close to the spectrum.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical kernel failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sfc
