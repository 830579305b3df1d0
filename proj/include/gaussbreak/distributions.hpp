#pragma once

#include "gaussbreak/gaussian_objects.hpp"

#include <cstdint>
#include <vector>

namespace gaussbreak {

/// Multivariate normal law of the outcomes of a Gaussian measurement.
struct OutcomeGaussian {
  RealVector mean;
  RealMatrix covariance;
};

/// Outcome law of `obs` measured in `st`.
///
/// The outcome characteristic function is
///   E[exp(i p^T X)] = tr[rho W(Kp)] exp(-p^T L p / 4 - i m^T p)
///                   = exp(-p^T (K^T Omega^T V Omega K + L) p / 4 - i (K^T Omega r + m)^T p),
/// using tr[rho W(x)] = exp(-x^T Omega^T V Omega x / 4 - i (Omega r)^T x).
/// Matching against exp(i p^T mu - p^T Sigma p / 2) gives
///   Sigma = (K^T Omega^T V Omega K + L) / 2,   mu = -(K^T Omega r + m).
/// The factor 1/2 is the one place where the characteristic-function
/// convention (x^T B x / 4) meets the probabilistic one; the vacuum test pins
/// it (position variance 1/2 for V = I).
OutcomeGaussian outcome_distribution(const GaussianState& st, const GaussianObservable& obs);

/// Draws n i.i.d. outcome vectors.
///
/// Generator "gaussbreak-normal-v1": std::mt19937_64 seeded with `seed`
/// (its output sequence is fixed by the C++ standard); each 64-bit word u is
/// mapped to the open interval (0, 1) as ((u >> 11) + 0.5) * 2^-53, and
/// standard normals come in pairs from the Marsaglia polar form of
/// Box-Muller on 2U - 1. Samples are mean + F z with F = Q diag(sqrt(max(l, 0)))
/// from the Jacobi eigen-decomposition Q diag(l) Q^T of the covariance.
/// Throws InvalidInput for n == 0 or a covariance that is not PSD.
std::vector<RealVector> sample(const OutcomeGaussian& d, std::size_t n, std::uint64_t seed);

/// max(|mu_a - mu_b|_2, |Sigma_a - Sigma_b|_2) with the spectral norm.
double moment_distance(const OutcomeGaussian& a, const OutcomeGaussian& b);

}  // namespace gaussbreak
