#include "gaussbreak/distributions.hpp"
#include "gaussbreak/error.hpp"
#include "random_objects.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gaussbreak;
using gaussbreak::testing::Random;

namespace {

RealVector vec2(double a, double b) { return (RealVector(2) << a, b).finished(); }

GaussianObservable position() { return quadrature_observable(vec2(0, 1)); }

// The documented generator, written out directly.
std::vector<double> reference_normals(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 eng(seed);
  auto unit = [&] { return ((eng() >> 11) + 0.5) * 0x1.0p-53; };
  std::vector<double> out;
  while (out.size() < count) {
    double u, v, s;
    do {
      u = 2.0 * unit() - 1.0;
      v = 2.0 * unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    out.push_back(u * f);
    out.push_back(v * f);
  }
  out.resize(count);
  return out;
}

}  // namespace

TEST(OutcomeDistribution, VacuumPositionHasVarianceHalf) {
  const OutcomeGaussian d = outcome_distribution(vacuum_state(1), position());
  EXPECT_NEAR(d.mean(0), 0.0, 1e-15);
  EXPECT_NEAR(d.covariance(0, 0), 0.5, 1e-15);
}

TEST(OutcomeDistribution, NoisyPositionHasVarianceOne) {
  const GaussianObservable noisy(position().k(), RealMatrix::Identity(1, 1), RealVector::Zero(1));
  EXPECT_NEAR(outcome_distribution(vacuum_state(1), noisy).covariance(0, 0), 1.0, 1e-15);
}

TEST(OutcomeDistribution, DisplacementShiftsPositionOutcomes) {
  const double q0 = 1.75, p0 = -0.4;
  const GaussianState st(RealMatrix::Identity(2, 2), vec2(q0, p0));
  EXPECT_NEAR(outcome_distribution(st, position()).mean(0), q0, 1e-15);
  EXPECT_NEAR(outcome_distribution(st, canonical_position(1)).mean(0), q0, 1e-15);
  // Momentum reads out as k = (-1, 0).
  EXPECT_NEAR(outcome_distribution(st, quadrature_observable(vec2(-1, 0))).mean(0), p0, 1e-15);
}

TEST(OutcomeDistribution, OffsetAddsToMean) {
  const GaussianObservable shifted(position().k(), RealMatrix::Zero(1, 1),
                                   (RealVector(1) << 0.25).finished());
  const double base = outcome_distribution(vacuum_state(1), position()).mean(0);
  EXPECT_NEAR(outcome_distribution(vacuum_state(1), shifted).mean(0), base - 0.25, 1e-15);
}

TEST(OutcomeDistribution, VarianceIsPositiveForEveryQuadrature) {
  Random rng(21);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = rng.index(1, 3);
    const OutcomeGaussian d =
        outcome_distribution(rng.state(n), quadrature_observable(rng.vector(2 * n)));
    EXPECT_GT(d.covariance(0, 0), 0.0);
  }
}

TEST(OutcomeDistribution, HeisenbergAndSchroedingerAgree) {
  Random rng(22);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n_in = rng.index(1, 2), n_out = rng.index(1, 2), m = rng.index(1, 3);
    const GaussianChannel ch = rng.channel(n_in, n_out);
    const GaussianState st = rng.state(n_in);
    const GaussianObservable obs = rng.observable(n_out, m);
    const OutcomeGaussian heis = outcome_distribution(st, apply_channel_to_observable(ch, obs));
    const OutcomeGaussian schr = outcome_distribution(apply_channel_to_state(ch, st), obs);
    EXPECT_LE(moment_distance(heis, schr), 1e-9);
  }
}

TEST(MomentDistance, Examples) {
  const OutcomeGaussian a{RealVector::Zero(1), RealMatrix::Identity(1, 1)};
  EXPECT_EQ(moment_distance(a, a), 0.0);
  OutcomeGaussian b = a;
  b.mean(0) = 1.0;
  EXPECT_DOUBLE_EQ(moment_distance(a, b), 1.0);
  OutcomeGaussian c = a;
  c.covariance *= 2.0;
  EXPECT_DOUBLE_EQ(moment_distance(a, c), 1.0);
}

TEST(Sample, VarianceHalfWithinThreeSigma) {
  const OutcomeGaussian d = outcome_distribution(vacuum_state(1), position());
  const std::size_t n = 100000;
  const std::vector<RealVector> xs = sample(d, n, 2024);
  double mean = 0.0;
  for (const RealVector& x : xs) mean += x(0);
  mean /= n;
  double var = 0.0;
  for (const RealVector& x : xs) var += (x(0) - mean) * (x(0) - mean);
  var /= (n - 1);
  const double se = 0.5 * std::sqrt(2.0 / (n - 1));
  EXPECT_LE(std::abs(var - 0.5), 3.0 * se);
  EXPECT_LE(std::abs(mean), 3.0 * std::sqrt(0.5 / n));
}

TEST(Sample, ZeroCovarianceReturnsMean) {
  const OutcomeGaussian d{vec2(1.5, -2.0), RealMatrix::Zero(2, 2)};
  for (const RealVector& x : sample(d, 50, 1)) EXPECT_EQ(x, d.mean);
}

TEST(Sample, MatchesDocumentedGenerator) {
  const OutcomeGaussian d{RealVector::Zero(2), RealMatrix::Identity(2, 2)};
  const std::vector<RealVector> xs = sample(d, 50, 99);
  const std::vector<double> ref = reference_normals(99, 100);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_EQ(xs[i](0), ref[2 * i]);
    EXPECT_EQ(xs[i](1), ref[2 * i + 1]);
  }
}

TEST(Sample, PinnedRegressionVector) {
  const OutcomeGaussian d = outcome_distribution(vacuum_state(1), [] {
    RealMatrix k(2, 2);
    k << 0, -1, 1, 0;
    return GaussianObservable(k, RealMatrix::Identity(2, 2), RealVector::Zero(2));
  }());
  const std::vector<RealVector> xs = sample(d, 3, 42);
  const double pinned[3][2] = {{1.2938204232729367, 0.7049882664208599},
                               {0.39797739618378886, -0.5740948067202614},
                               {1.1185550524574785, -1.9066853448304657}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(xs[i](j), pinned[i][j], 1e-15);
}

TEST(Sample, SameSeedSameStream) {
  Random rng(3);
  const OutcomeGaussian d = outcome_distribution(rng.state(2), rng.observable(2, 3));
  const std::vector<RealVector> a = sample(d, 20, 7), b = sample(d, 20, 7), c = sample(d, 20, 8);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_NE(a[0], c[0]);
}

TEST(Sample, RejectsBadInput) {
  const OutcomeGaussian d{RealVector::Zero(1), RealMatrix::Identity(1, 1)};
  EXPECT_THROW(sample(d, 0, 1), InvalidInput);
  const OutcomeGaussian bad{RealVector::Zero(1), -RealMatrix::Identity(1, 1)};
  EXPECT_THROW(sample(bad, 5, 1), InvalidInput);
}
