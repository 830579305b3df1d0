#include "gaussbreak/witness.hpp"

#include "gaussbreak/classification.hpp"
#include "gaussbreak/compatibility.hpp"
#include "gaussbreak/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace gaussbreak {

namespace {

constexpr int kPhaseGrid = 16;
constexpr double kDegenerateNorm = 1e-12;

struct Split {
  RealVector x;
  RealVector y;
  double balance = -1.0;
};

// e^{i theta} z for theta on a grid over [0, pi); pi would only flip both signs.
Split best_phase(const ComplexVector& z) {
  Split best;
  for (int t = 0; t < kPhaseGrid; ++t) {
    const double theta = std::numbers::pi * t / kPhaseGrid;
    const ComplexVector rotated = std::polar(1.0, theta) * z;
    const double balance = std::min(rotated.real().norm(), rotated.imag().norm());
    if (balance > best.balance) best = {rotated.real(), rotated.imag(), balance};
  }
  return best;
}

}  // namespace

IncompatibilityWitness build_witness(const GaussianChannel& ch) {
  const PsdVerdict gib = is_gib(ch);
  if (gib.is_psd)
    throw PreconditionError(
        "build_witness: channel is Gaussian incompatibility breaking, no witness exists");

  const RealMatrix pulled = ch.a().transpose() * symplectic_form(ch.in_modes()) * ch.a();
  const HermitianForm form(ch.b(), -pulled, "B - i A^T Omega A");

  for (const Eigenpair& pair : hermitian_eigenpairs(form)) {
    if (pair.value >= -gib.tolerance_used) break;
    Split s = best_phase(pair.vector * (std::sqrt(2.0) / pair.vector.norm()));
    if (s.balance < kDegenerateNorm) continue;

    const GaussianObservable e1 = quadrature_observable(s.x);
    const GaussianObservable e2 = quadrature_observable(s.y);
    GaussianObservable f1 = apply_channel_to_observable(ch, e1);
    GaussianObservable f2 = apply_channel_to_observable(ch, e2);
    const double sxy = s.x.dot(pulled * s.y);
    const double lx = f1.l()(0, 0);
    const double ly = f2.l()(0, 0);
    const double violation = sxy * sxy - 0.25 * (lx + ly) * (lx + ly);
    if (!(violation > 0.0)) continue;

    return IncompatibilityWitness{std::move(s.x), std::move(s.y), e1, e2, std::move(f1),
                                  std::move(f2), violation, lx * ly - sxy * sxy};
  }
  throw NumericalFailure("build_witness: negative eigenspace yields no well-conditioned split");
}

bool verify_witness(const IncompatibilityWitness& w, const GaussianChannel& ch) {
  const auto dim = static_cast<Eigen::Index>(2 * ch.out_modes());
  if (w.x.size() != dim || w.y.size() != dim) return false;
  if (!w.x.allFinite() || !w.y.allFinite() || w.x.isZero(0.0) || w.y.isZero(0.0)) return false;

  const GaussianObservable f1 = apply_channel_to_observable(ch, quadrature_observable(w.x));
  const GaussianObservable f2 = apply_channel_to_observable(ch, quadrature_observable(w.y));
  // x^T B x >= 0 for valid channels; negative values here are roundoff.
  const double lx = std::max(f1.l()(0, 0), 0.0);
  const double ly = std::max(f2.l()(0, 0), 0.0);
  const CompatibilityVerdict v = quad_pair_compatible(f1.k().col(0), lx, f2.k().col(0), ly);

  const double s = f1.k().col(0).dot(symplectic_form(ch.in_modes()) * f2.k().col(0));
  const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * (lx * ly + s * s);
  return v.certificate < -roundoff;
}

}  // namespace gaussbreak
