#pragma once

#include <stdexcept>
#include <string>

namespace poncelet {

// Base class for geometric failures that callers may reasonably catch and
// handle.  Precondition violations (bad arguments, wrong sizes) use the
// standard exceptions instead.
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A chord direction is tangent to the ellipse (the intersection quadratic
// has a double root at the base point).
struct TangencyError : GeometryError {
  using GeometryError::GeometryError;
};

// The two intersection roots are distinct but too close to separate reliably.
struct NearTangencyError : TangencyError {
  using TangencyError::TangencyError;
};

// Collinear or repeated vertices, collapsed orbits, coincident inputs.
struct DegeneracyError : GeometryError {
  using GeometryError::GeometryError;
};

// The operation requires a non-circular ellipse (a > b).
struct CircleError : GeometryError {
  using GeometryError::GeometryError;
};

// Root bracketing or convergence failure inside a numeric solver.
struct SolverError : GeometryError {
  using GeometryError::GeometryError;
};

// The conic-fit design matrix has a null space of dimension > 1: the sample
// set does not pin down a single conic.
struct FitAmbiguityError : GeometryError {
  using GeometryError::GeometryError;
};

// Locus sampling failed; carries the boundary parameter of the bad sample.
class SamplingError : public GeometryError {
 public:
  SamplingError(double t, const std::string& what)
      : GeometryError("locus sample at t = " + std::to_string(t) + ": " + what),
        t_(t) {}
  double offending_t() const { return t_; }

 private:
  double t_;
};

// --- exact projective module ---

// The line is isotropic (passes through a cyclic point), so the reflection
// law degenerates to the limit rule and no involution exists.
struct IsotropyError : GeometryError {
  using GeometryError::GeometryError;
};

// The conic matrix is singular where a regular conic is required.
struct SingularConicError : GeometryError {
  using GeometryError::GeometryError;
};

// A point/line incidence precondition fails (e.g. tangent at an off-conic point).
struct IncidenceError : GeometryError {
  using GeometryError::GeometryError;
};

// An exact computation would need a quadratic extension of the Gaussian
// rationals; carries the minimal polynomial of the missing element.
class FieldExtensionError : public GeometryError {
 public:
  FieldExtensionError(const std::string& what, std::string minimal_polynomial)
      : GeometryError(what + " [minimal polynomial: " + minimal_polynomial + "]"),
        minimal_polynomial_(std::move(minimal_polynomial)) {}
  const std::string& minimal_polynomial() const { return minimal_polynomial_; }

 private:
  std::string minimal_polynomial_;
};

}  // namespace poncelet
