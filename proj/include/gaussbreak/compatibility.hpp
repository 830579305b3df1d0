#pragma once

#include "gaussbreak/feasibility.hpp"
#include "gaussbreak/gaussian_objects.hpp"

#include <optional>
#include <vector>

namespace gaussbreak {

/// Certificates within this band of zero are flagged as boundary cases.
inline constexpr double kCompatibilityBoundary = 1e-6;

/// Cartesian factorisation R^{M1} x ... x R^{Mn} of an outcome space.
struct MarginSpec {
  std::vector<std::size_t> block_dims;

  std::size_t total() const;
  /// Offset of block j.
  std::size_t offset(std::size_t j) const;
  /// M x M_j selector (0; ...; I; ...; 0) picking block j.
  RealMatrix selector(std::size_t j) const;
};

/// j-th margin: apply_postprocessing((A_j, 0, 0), obs).
GaussianObservable margin(const GaussianObservable& obs, const MarginSpec& spec, std::size_t j);

/// Joint observable whose j-th margin is the j-th postprocessing of g. With
/// A = (A_1, ..., A_n), B = diag(B_1, ..., B_n), c = (c_1; ...; c_n) it is
/// (K A, B + A^T L A, c + A^T m), i.e. g postprocessed by (A, B, c). The
/// off-diagonal blocks A_j^T L A_k of the noise are kept: dropping them can
/// break L - i K^T Omega K >= 0.
GaussianObservable joint_from_postprocessings(const GaussianObservable& g,
                                              const std::vector<GaussianPostprocessing>& pps);

struct CompatibilityVerdict {
  bool compatible = false;
  /// |certificate| <= kCompatibilityBoundary.
  bool at_boundary = false;
  /// Joint with the inputs as margins, when compatible.
  std::optional<GaussianObservable> joint;
  /// Off-diagonal block of the joint's L.
  std::optional<RealMatrix> completion;
  /// Smallest eigenvalue of L - i K^T Omega K for the returned (or best) joint.
  double min_eigenvalue = 0.0;
  /// Closed form: lx*ly - (x^T Omega y)^2. Feasibility route: min_eigenvalue.
  double certificate = 0.0;
  /// Present for the feasibility route.
  std::optional<FeasibilityResult> solver;
};

/// Decides whether a pair has a Gaussian joint observable. The diagonal blocks,
/// K and m of the joint are fixed by the margins; the off-diagonal block X of
/// L is searched with the LMI solver. Compatible iff the solver certifies
/// feasibility; at_boundary reflects |min eigenvalue| <= 1e-6.
CompatibilityVerdict pair_compatible(const GaussianObservable& e1, const GaussianObservable& e2,
                                     const SolveOptions& options = {});

/// Closed form for two single-outcome observables (x, lx, mx), (y, ly, my):
/// compatible iff (x^T Omega y)^2 <= lx*ly, with optimal completion l12 = 0.
/// Certificates within [-1e-6, 1e-6] count as compatible-at-boundary.
CompatibilityVerdict quad_pair_compatible(const RealVector& x, double lx, const RealVector& y,
                                          double ly, double mx = 0.0, double my = 0.0);

}  // namespace gaussbreak
