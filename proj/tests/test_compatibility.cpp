#include "gaussbreak/classification.hpp"
#include "gaussbreak/compatibility.hpp"
#include "gaussbreak/error.hpp"
#include "random_objects.hpp"

#include <gtest/gtest.h>

using namespace gaussbreak;
using gaussbreak::testing::Random;

namespace {

RealVector vec2(double a, double b) { return (RealVector(2) << a, b).finished(); }
double max_diff(const RealMatrix& a, const RealMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

GaussianObservable noisy_quadrature(const RealVector& k, double l) {
  return GaussianObservable(k, RealMatrix::Constant(1, 1, l), RealVector::Zero(1));
}

}  // namespace

TEST(Margin, SelectsBlock) {
  RealMatrix k(2, 2), l(2, 2);
  k << 1, 2, 3, 4;
  l << 2, 0.5, 0.5, 3;
  const GaussianObservable obs(k, l, vec2(7, 8));
  const GaussianObservable m1 = margin(obs, {{1, 1}}, 0);
  EXPECT_EQ(m1.k(), k.col(0));
  EXPECT_EQ(m1.l()(0, 0), 2.0);
  EXPECT_EQ(m1.m()(0), 7.0);
  const GaussianObservable m2 = margin(obs, {{1, 1}}, 1);
  EXPECT_EQ(m2.k(), k.col(1));
  EXPECT_EQ(m2.l()(0, 0), 3.0);
}

TEST(Margin, CanonicalPositionFirstBlockIsFirstPosition) {
  const GaussianObservable q1 = margin(canonical_position(2), {{1, 1}}, 0);
  EXPECT_EQ(q1.k().col(0), (RealVector(4) << 0, 1, 0, 0).finished());
}

TEST(Margin, RejectsBadSpec) {
  EXPECT_THROW(margin(canonical_position(2), {{1, 2}}, 0), InvalidInput);
  EXPECT_THROW(margin(canonical_position(2), {{1, 1}}, 2), InvalidInput);
}

TEST(JointFromPostprocessings, SingleIsPostprocessedObservable) {
  Random rng(31);
  const GaussianObservable g = rng.observable(2, 3);
  const GaussianPostprocessing pp = rng.postprocessing(3, 2);
  const GaussianObservable joint = joint_from_postprocessings(g, {pp});
  const GaussianObservable direct = apply_postprocessing(pp, g);
  EXPECT_EQ(joint.k(), direct.k());
  EXPECT_EQ(joint.l(), direct.l());
  EXPECT_EQ(joint.m(), direct.m());
}

TEST(JointFromPostprocessings, MarginSelectorsReassembleObservable) {
  Random rng(32);
  const GaussianObservable g = rng.observable(2, 3);
  const MarginSpec spec{{1, 2}};
  const GaussianObservable joint = joint_from_postprocessings(
      g, {GaussianPostprocessing(spec.selector(0), RealMatrix::Zero(1, 1), RealVector::Zero(1)),
          GaussianPostprocessing(spec.selector(1), RealMatrix::Zero(2, 2), RealVector::Zero(2))});
  EXPECT_EQ(joint.k(), g.k());
  EXPECT_EQ(joint.m(), g.m());
  EXPECT_EQ(joint.l(), g.l());
  EXPECT_TRUE(validate(joint).valid());
}

// K = (Q, P, Q + P) with the least noise |i K^T Omega K|. Zeroing the noise
// correlations between the margins {Q} and {P, Q + P} gives an invalid
// observable, so the joint has to keep them.
TEST(JointFromPostprocessings, CrossCorrelationsAreNeeded) {
  RealMatrix k(2, 3);
  k << 0, -1, -1, 1, 0, 1;
  const RealMatrix gram = k.transpose() * symplectic_form(1) * k;
  const GaussianObservable g(k, Random::abs_form(gram), RealVector::Zero(3));
  ASSERT_TRUE(validate(g).valid());
  RealMatrix block_diag = g.l();
  block_diag.block(0, 1, 1, 2).setZero();
  block_diag.block(1, 0, 2, 1).setZero();
  const ValidityReport dropped = validate(GaussianObservable(k, block_diag, RealVector::Zero(3)));
  EXPECT_FALSE(dropped.valid());
  EXPECT_NEAR(dropped.checks.back().verdict.min_eigenvalue, -0.4639254761876505, 1e-9);

  const MarginSpec spec{{1, 2}};
  const GaussianObservable joint = joint_from_postprocessings(
      g, {GaussianPostprocessing(spec.selector(0), RealMatrix::Zero(1, 1), RealVector::Zero(1)),
          GaussianPostprocessing(spec.selector(1), RealMatrix::Zero(2, 2), RealVector::Zero(2))});
  EXPECT_TRUE(validate(joint).valid());
}

TEST(JointFromPostprocessings, MarginsRoundTrip) {
  Random rng(33);
  for (int i = 0; i < 200; ++i) {
    const std::size_t modes = rng.index(1, 2), m = rng.index(1, 3), count = rng.index(1, 3);
    const GaussianObservable g = rng.observable(modes, m);
    std::vector<GaussianPostprocessing> pps;
    MarginSpec spec;
    for (std::size_t j = 0; j < count; ++j) {
      pps.push_back(rng.postprocessing(m, rng.index(1, 2)));
      spec.block_dims.push_back(pps.back().target_dim());
    }
    const GaussianObservable joint = joint_from_postprocessings(g, pps);
    EXPECT_TRUE(validate(joint).valid());
    for (std::size_t j = 0; j < count; ++j) {
      const GaussianObservable a = margin(joint, spec, j), b = apply_postprocessing(pps[j], g);
      EXPECT_LE(max_diff(a.k(), b.k()), 1e-12);
      EXPECT_LE(max_diff(a.l(), b.l()), 1e-12);
      EXPECT_LE(max_diff(a.m(), b.m()), 1e-12);
    }
  }
}

// For B - i A^T Omega A >= 0 the observable (A, B, 0) is valid, and the two
// quadrature postprocessings x, y of it reproduce the transformed pair.
TEST(JointFromPostprocessings, IncompatibilityBreakingConstruction) {
  Random rng(34);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n_in = rng.index(1, 2), n_out = rng.index(1, 2);
    const GaussianChannel ch = rng.gib_channel(n_in, n_out);
    const GaussianObservable g(ch.a(), ch.b(), RealVector::Zero(ch.b().rows()));
    ASSERT_TRUE(validate(g).valid());
    const RealVector x = rng.vector(2 * n_out), y = rng.vector(2 * n_out);
    const auto pp = [&](const RealVector& v) {
      return GaussianPostprocessing(v, RealMatrix::Zero(1, 1), RealVector::Zero(1));
    };
    const GaussianObservable joint = joint_from_postprocessings(g, {pp(x), pp(y)});
    EXPECT_TRUE(validate(joint).valid());
    const GaussianObservable f1 = apply_channel_to_observable(ch, quadrature_observable(x));
    const GaussianObservable m1 = margin(joint, {{1, 1}}, 0);
    EXPECT_LE(max_diff(m1.k(), f1.k()), 1e-12);
    EXPECT_LE(std::abs(m1.l()(0, 0) - f1.l()(0, 0)), 1e-12 * std::max(1.0, f1.l()(0, 0)));
  }
}

TEST(QuadPair, NoiselessCanonicalPairIsIncompatible) {
  const CompatibilityVerdict v = quad_pair_compatible(vec2(1, 0), 0.0, vec2(0, -1), 0.0);
  EXPECT_FALSE(v.compatible);
  EXPECT_DOUBLE_EQ(v.certificate, -1.0);
  EXPECT_FALSE(v.joint.has_value());
}

TEST(QuadPair, UnitNoiseIsBoundaryCompatible) {
  const CompatibilityVerdict v = quad_pair_compatible(vec2(1, 0), 1.0, vec2(0, -1), 1.0);
  EXPECT_TRUE(v.compatible);
  EXPECT_TRUE(v.at_boundary);
  EXPECT_DOUBLE_EQ(v.certificate, 0.0);
  ASSERT_TRUE(v.joint.has_value());
  EXPECT_TRUE(validate(*v.joint).valid());
}

TEST(QuadPair, ParallelQuadraturesAreCompatible) {
  Random rng(35);
  for (int i = 0; i < 50; ++i) {
    const RealVector x = rng.vector(4);
    const CompatibilityVerdict v = quad_pair_compatible(x, 0.0, 2.5 * x, rng.uniform());
    EXPECT_TRUE(v.compatible);
  }
}

TEST(QuadPair, RejectsBadInput) {
  EXPECT_THROW(quad_pair_compatible(vec2(1, 0), -1.0, vec2(0, 1), 0.0), InvalidInput);
  EXPECT_THROW(quad_pair_compatible(vec2(0, 0), 1.0, vec2(0, 1), 0.0), InvalidInput);
}

TEST(PairCompatible, NoiselessPositionMomentumIsIncompatible) {
  const CompatibilityVerdict v =
      pair_compatible(quadrature_observable(vec2(0, 1)), quadrature_observable(vec2(-1, 0)));
  EXPECT_FALSE(v.compatible);
  EXPECT_FALSE(v.joint.has_value());
}

TEST(PairCompatible, UnitNoisePairHasJoint) {
  const CompatibilityVerdict v =
      pair_compatible(noisy_quadrature(vec2(0, 1), 1.0), noisy_quadrature(vec2(-1, 0), 1.0));
  ASSERT_TRUE(v.compatible);
  EXPECT_TRUE(v.at_boundary);
  ASSERT_TRUE(v.joint.has_value());
  EXPECT_TRUE(validate(*v.joint).valid());
  EXPECT_NEAR((*v.completion)(0, 0), 0.0, 1e-6);
}

TEST(PairCompatible, ObservableIsCompatibleWithItself) {
  Random rng(36);
  for (int i = 0; i < 30; ++i) {
    const GaussianObservable e = rng.observable(rng.index(1, 2), rng.index(1, 2));
    const CompatibilityVerdict v = pair_compatible(e, e);
    EXPECT_TRUE(v.compatible);
    // The duplicated joint [[L, L], [L, L]] - i [[G, G], [G, G]] is PSD.
    const auto m = static_cast<Eigen::Index>(e.outcome_dim());
    RealMatrix k(e.k().rows(), 2 * m);
    k << e.k(), e.k();
    RealMatrix l(2 * m, 2 * m);
    l << e.l(), e.l(), e.l(), e.l();
    EXPECT_TRUE(validate(GaussianObservable(k, l, concat(e.m(), e.m()))).valid());
  }
}

TEST(PairCompatible, JointHasInputsAsMargins) {
  Random rng(37);
  for (int i = 0; i < 30; ++i) {
    const std::size_t modes = rng.index(1, 2);
    const GaussianObservable e1 = rng.observable(modes, rng.index(1, 2), 1.5);
    const GaussianObservable e2 = rng.observable(modes, rng.index(1, 2), 1.5);
    const CompatibilityVerdict v = pair_compatible(e1, e2);
    if (!v.compatible) continue;
    const MarginSpec spec{{e1.outcome_dim(), e2.outcome_dim()}};
    EXPECT_LE(max_diff(margin(*v.joint, spec, 0).l(), e1.l()), 1e-12);
    EXPECT_LE(max_diff(margin(*v.joint, spec, 1).k(), e2.k()), 1e-12);
    EXPECT_TRUE(validate(*v.joint).valid());
  }
}

TEST(PairCompatible, RejectsModeMismatch) {
  EXPECT_THROW(pair_compatible(canonical_position(1), canonical_position(2)), InvalidInput);
}
