#pragma once

#include "gaussbreak/feasibility.hpp"
#include "gaussbreak/gaussian_objects.hpp"

#include <optional>
#include <vector>

namespace gaussbreak {

/// Verdicts whose min eigenvalue lies within this band (relative to
/// max(1, max|h|)) carry a boundary flag.
inline constexpr double kClassificationBoundary = 1e-6;

/// Default squeezing grid for the EPR probe. e^8 keeps the kernel directions
/// of the probe dominant at double precision.
inline const std::vector<double> kDefaultEprGrid{0.25, 0.5, 1.0, 2.0, 4.0, 8.0};

/// Gaussian incompatibility breaking test: B - i A^T Omega A >= 0 on the
/// output phase space. Throws InvalidInput if the channel is not valid.
PsdVerdict is_gib(const GaussianChannel& ch, double tolerance = kDefaultPsdTolerance);

struct EbCertificate {
  RealMatrix b1;
  /// check_psd min eigenvalues of B1 + i Omega and (B - B1) - i A^T Omega A.
  double residual_b1 = 0.0;
  double residual_b2 = 0.0;
};

enum class EbStatus {
  Feasible,    ///< decomposition found and re-verified
  Infeasible,  ///< solver stalled with a negative residual (heuristic, not a proof)
  Undecided,   ///< iteration budget exhausted
};

const char* to_string(EbStatus s);

struct EbResult {
  EbStatus status = EbStatus::Undecided;
  std::optional<EbCertificate> certificate;
  FeasibilityResult solver;
};

/// Entanglement breaking test: searches B = B1 + B2 with B1 + i Omega >= 0 and
/// B2 - i A^T Omega A >= 0. A "feasible" answer is certified; the others are
/// solver outcomes.
EbResult is_eb(const GaussianChannel& ch, const SolveOptions& options = {});

struct SteeringVerdict {
  bool steerable = false;
  /// check_psd of V + i (0 (+) Omega_B).
  PsdVerdict verdict;
};

/// Steerability of a bipartite Gaussian state by Gaussian measurements on the
/// first `split.a_modes` modes: not steerable iff V + i (0 (+) Omega) >= 0.
SteeringVerdict is_steerable(const GaussianState& st, ModeSplit split,
                             double tolerance = kDefaultPsdTolerance);

struct EprProbePoint {
  double r = 0.0;
  double min_eigenvalue = 0.0;
  bool steerable = false;
};

struct SteerabilityBreakingReport {
  bool breaking = false;
  PsdVerdict gib;
  std::vector<EprProbePoint> probe;
  /// min over unit z of conj(z)^T Omega (B - i A^T Omega A) Omega^T z.
  double kernel_limit = 0.0;
  /// Probe matches the verdict: no steerable grid point when breaking, at
  /// least one otherwise.
  bool probe_agrees = false;
};

/// Steerability breaking is decided by the GIB test; the report adds the
/// finite-r probe (channel on Alice's side of EPR(r) for each r in r_grid)
/// and the r -> infinity kernel quantity.
SteerabilityBreakingReport is_steerability_breaking(
    const GaussianChannel& ch, const std::vector<double>& r_grid = kDefaultEprGrid,
    double tolerance = kDefaultPsdTolerance);

struct ClassicalNoiseFlags {
  /// B + i Omega >= 0, i.e. B is a valid covariance matrix.
  PsdVerdict gib;
  EbResult eb;
  /// Set when gib holds: the noise is the Wigner function of a Gaussian state.
  bool noise_is_gaussian_state_wigner = false;
};

/// For channels (I, B, c). Throws InvalidInput when A is not the identity.
ClassicalNoiseFlags classify_classical_noise(const GaussianChannel& ch,
                                             const SolveOptions& options = {});

bool is_classical_noise(const GaussianChannel& ch);

struct ChannelReport {
  PsdVerdict valid;
  /// The remaining fields are filled only for valid channels.
  std::optional<PsdVerdict> gib;
  bool gib_at_boundary = false;
  std::optional<EbResult> eb;
  std::optional<SteerabilityBreakingReport> steering;
  std::optional<ClassicalNoiseFlags> classical_noise;
};

ChannelReport classify(const GaussianChannel& ch, const std::vector<double>& r_grid = kDefaultEprGrid,
                       const SolveOptions& options = {});

}  // namespace gaussbreak
