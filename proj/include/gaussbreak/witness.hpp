#pragma once

#include "gaussbreak/gaussian_objects.hpp"

namespace gaussbreak {

/// Two generalised quadratures whose images under a channel are Gaussian
/// incompatible.
struct IncompatibilityWitness {
  RealVector x;
  RealVector y;
  /// Quadratures (x, 0, 0) and (y, 0, 0) on the channel's output modes.
  GaussianObservable e1;
  GaussianObservable e2;
  /// Their images (Ax, x^T B x, x^T c) and (Ay, y^T B y, y^T c).
  GaussianObservable f1;
  GaussianObservable f2;
  /// (x^T A^T Omega A y)^2 - (x^T B x + y^T B y)^2 / 4, strictly positive.
  double violation = 0.0;
  /// Largest determinant of L - i K^T Omega K over all joint candidates
  /// (attained at l12 = 0): (x^T B x)(y^T B y) - (x^T A^T Omega A y)^2 < 0.
  double determinant_bound = 0.0;
};

/// Builds a witness from the most negative eigenvector z = x + iy of
/// B - i A^T Omega A. The global phase of z is chosen on a 16-point grid to
/// maximise min(|x|, |y|), and z is scaled to |z|^2 = 2. Throws
/// PreconditionError for Gaussian incompatibility breaking channels and
/// NumericalFailure if no well-conditioned split exists.
IncompatibilityWitness build_witness(const GaussianChannel& ch);

/// Recomputes the transformed quadratures from w.x, w.y and `ch` and returns
/// true iff every joint candidate has negative determinant.
bool verify_witness(const IncompatibilityWitness& w, const GaussianChannel& ch);

}  // namespace gaussbreak
