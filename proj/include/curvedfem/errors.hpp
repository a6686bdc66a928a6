#pragma once

#include <stdexcept>
#include <string>

namespace curvedfem {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DegenerateTriangle : public Error {
public:
  using Error::Error;
};

/// det DPsi <= 0 somewhere in an element. `element` is -1 when the failure
/// was detected outside of a mesh context.
class NonpositiveJacobian : public Error {
public:
  explicit NonpositiveJacobian(const std::string &what, long element = -1)
      : Error(what), element_(element) {}
  long element() const { return element_; }

private:
  long element_;
};

class NewtonDivergence : public Error {
public:
  using Error::Error;
};

class UnsupportedDegree : public Error {
public:
  using Error::Error;
};

class EmptyMesh : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class InvalidRateInput : public Error {
public:
  using Error::Error;
};

class DegenerateRHS : public Error {
public:
  using Error::Error;
};

} // namespace curvedfem
