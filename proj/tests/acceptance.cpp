// Acceptance checks 1-9. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include "gaussbreak/classification.hpp"
#include "gaussbreak/compatibility.hpp"
#include "gaussbreak/distributions.hpp"
#include "gaussbreak/documents.hpp"
#include "gaussbreak/witness.hpp"
#include "random_objects.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace gaussbreak;
using gaussbreak::testing::Random;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

const std::string kFixtures = GAUSSBREAK_FIXTURES_DIR;

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome unit_noise_fixture() {
  const GaussianChannel ch = load_as<GaussianChannel>(kFixtures + "/classical_noise_I.json");
  const ChannelReport r = classify(ch);
  const bool ok = r.valid.is_psd && r.gib && r.gib->is_psd &&
                  std::abs(r.gib->min_eigenvalue) <= 1e-9 && r.eb &&
                  r.eb->status == EbStatus::Infeasible;
  return {ok, fmt("gib=%d min_eig=%.3g eb=%s", r.gib && r.gib->is_psd,
                  r.gib ? r.gib->min_eigenvalue : NAN, r.eb ? to_string(r.eb->status) : "-")};
}

Outcome witness_completeness() {
  Random rng(1001);
  int non_gib = 0, verified = 0, gib = 0, gib_pairs = 0, gib_violations = 0;
  double worst = INFINITY;
  while (non_gib < 500) {
    const GaussianChannel ch = rng.channel(rng.index(1, 2), rng.index(1, 2), 0.1);
    if (is_gib(ch).is_psd) continue;
    ++non_gib;
    try {
      if (verify_witness(build_witness(ch), ch)) ++verified;
    } catch (const std::exception&) {
    }
  }
  // Every third channel sits exactly on the boundary: classical noise by a
  // pure-state covariance, or an attenuator with eta <= 1/2.
  for (; gib < 500; ++gib) {
    std::size_t n_out = rng.index(1, 2);
    GaussianChannel ch = rng.gib_channel(rng.index(1, 2), n_out, gib % 2 ? 0.3 : 0.0);
    if (gib % 6 == 0) {
      const RealMatrix s = rng.symplectic(n_out, 0.8);
      ch = classical_noise_channel(s * s.transpose());
    } else if (gib % 6 == 3) {
      ch = attenuator_channel(rng.uniform(0.0, 0.5), n_out);
    }
    for (int k = 0; k < 5; ++k, ++gib_pairs) {
      const RealVector x = rng.vector(2 * n_out).normalized(), y = rng.vector(2 * n_out).normalized();
      const GaussianObservable f1 = apply_channel_to_observable(ch, quadrature_observable(x));
      const GaussianObservable f2 = apply_channel_to_observable(ch, quadrature_observable(y));
      const double cert = quad_pair_compatible(f1.k().col(0), std::max(0.0, f1.l()(0, 0)),
                                               f2.k().col(0), std::max(0.0, f2.l()(0, 0)))
                              .certificate;
      worst = std::min(worst, cert);
      if (cert < -1e-8) ++gib_violations;
    }
  }
  return {verified == non_gib && gib_violations == 0,
          fmt("witness verified %d/%d; GIB pairs %d, incompatible %d (min cert %.3g)", verified,
              non_gib, gib_pairs, gib_violations, worst)};
}

Outcome joint_roundtrip() {
  Random rng(1002);
  int ok = 0;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t m = rng.index(1, 3), count = rng.index(2, 3);
    const GaussianObservable g = rng.observable(rng.index(1, 2), m);
    std::vector<GaussianPostprocessing> pps;
    MarginSpec spec;
    for (std::size_t j = 0; j < count; ++j) {
      pps.push_back(rng.postprocessing(m, rng.index(1, 2)));
      spec.block_dims.push_back(pps.back().target_dim());
    }
    const GaussianObservable joint = joint_from_postprocessings(g, pps);
    double diff = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
      const GaussianObservable a = margin(joint, spec, j), b = apply_postprocessing(pps[j], g);
      diff = std::max({diff, (a.k() - b.k()).cwiseAbs().maxCoeff(),
                       (a.l() - b.l()).cwiseAbs().maxCoeff(), (a.m() - b.m()).cwiseAbs().maxCoeff()});
    }
    worst = std::max(worst, diff);
    if (diff <= 1e-12 && validate(joint).valid()) ++ok;
  }
  return {ok == 500, fmt("%d/500 joints valid with exact margins (max diff %.3g)", ok, worst)};
}

Outcome gib_vs_probe() {
  Random rng(1003);
  int gib = 0, non_gib = 0, redrawn = 0, disagreements = 0;
  while (gib + non_gib < 200) {
    const std::size_t n_in = rng.index(1, 2), n_out = rng.index(1, 2);
    const bool want_gib = (gib + non_gib) % 2 == 0;
    const GaussianChannel ch = want_gib ? rng.gib_channel(n_in, n_out, 0.1) : rng.channel(n_in, n_out, 0.2);
    const PsdVerdict v = is_gib(ch);
    if (!want_gib && v.is_psd) {
      ++redrawn;
      continue;
    }
    (v.is_psd ? gib : non_gib)++;
    const SteerabilityBreakingReport r = is_steerability_breaking(ch);
    if (!r.probe_agrees) ++disagreements;
  }
  return {disagreements == 0, fmt("%d GIB + %d non-GIB channels, %d disagreements (%d GIB draws skipped for the non-GIB half)", gib,
                                   non_gib, disagreements, redrawn)};
}

Outcome eb_implies_gib() {
  Random rng(1004);
  int counter = 0;
  for (int i = 0; i < 500; ++i)
    if (!is_gib(rng.eb_channel(rng.index(1, 3), rng.index(1, 3), i % 2 ? 0.3 : 0.0)).is_psd)
      ++counter;
  return {counter == 0, fmt("%d counterexamples among 500 EB channels", counter)};
}

Outcome attenuator_threshold() {
  const PsdVerdict below = is_gib(attenuator_channel(0.5 - 1e-6));
  const PsdVerdict above = is_gib(attenuator_channel(0.5 + 1e-6));
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double eta = i / 100.0;
    worst = std::max(worst, std::abs(is_gib(attenuator_channel(eta)).min_eigenvalue - (1 - 2 * eta)));
  }
  return {below.is_psd && !above.is_psd && worst <= 1e-12,
          fmt("gib(0.5-1e-6)=%d gib(0.5+1e-6)=%d, max |min_eig - (1-2eta)| = %.3g", below.is_psd,
              above.is_psd, worst)};
}

Outcome closed_form_vs_sdp() {
  Random rng(1005);
  int agree = 0, skipped = 0, incompatible = 0;
  for (int n = 0; n < 500;) {
    const std::size_t modes = rng.index(1, 2);
    const RealVector x = rng.vector(2 * modes), y = rng.vector(2 * modes);
    const double lx = rng.uniform(0.0, 2.0), ly = rng.uniform(0.0, 2.0);
    const CompatibilityVerdict closed = quad_pair_compatible(x, lx, y, ly);
    if (std::abs(closed.certificate) <= 1e-6) {
      ++skipped;
      continue;
    }
    ++n;
    const auto obs = [](const RealVector& k, double l) {
      return GaussianObservable(k, RealMatrix::Constant(1, 1, l), RealVector::Zero(1));
    };
    const CompatibilityVerdict sdp = pair_compatible(obs(x, lx), obs(y, ly));
    if (sdp.compatible == closed.compatible) ++agree;
    if (!closed.compatible) ++incompatible;
  }
  return {agree == 500, fmt("%d/500 agree (%d incompatible, %d boundary draws skipped)", agree,
                            incompatible, skipped)};
}

Outcome duality_and_sampling() {
  Random rng(1006);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t n_in = rng.index(1, 2), n_out = rng.index(1, 2);
    const GaussianChannel ch = rng.channel(n_in, n_out);
    const GaussianState st = rng.state(n_in);
    const GaussianObservable obs = rng.observable(n_out, rng.index(1, 3));
    worst = std::max(worst, moment_distance(outcome_distribution(st, apply_channel_to_observable(ch, obs)),
                                            outcome_distribution(apply_channel_to_state(ch, st), obs)));
  }

  // Sampled moments against the analytic law, 5 standard errors per entry.
  const std::size_t n = 100000;
  double worst_z = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const std::size_t modes = rng.index(1, 2), m = rng.index(1, 3);
    const OutcomeGaussian d = outcome_distribution(rng.state(modes), rng.observable(modes, m));
    const std::vector<RealVector> xs = sample(d, n, 20240 + trial);
    RealVector mean = RealVector::Zero(static_cast<Eigen::Index>(m));
    for (const RealVector& x : xs) mean += x;
    mean /= static_cast<double>(n);
    RealMatrix cov = RealMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (const RealVector& x : xs) cov += (x - mean) * (x - mean).transpose();
    cov /= static_cast<double>(n - 1);
    const RealMatrix& s = d.covariance;
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
      worst_z = std::max(worst_z, std::abs(mean(i) - d.mean(i)) / std::sqrt(s(i, i) / n));
      for (Eigen::Index j = 0; j < s.cols(); ++j) {
        const double se = std::sqrt((s(i, i) * s(j, j) + s(i, j) * s(i, j)) / n);
        worst_z = std::max(worst_z, std::abs(cov(i, j) - s(i, j)) / se);
      }
    }
  }
  return {worst <= 1e-9 && worst_z <= 5.0,
          fmt("max moment distance %.3g over 500 triples; worst sampled z-score %.2f", worst, worst_z)};
}

Outcome epr_steerability() {
  bool ok = true;
  std::ostringstream detail;
  for (double r : kDefaultEprGrid) {
    const SteeringVerdict v = is_steerable(epr_state(1, r), {1, 1});
    ok = ok && v.steerable;
    detail << "r=" << r << ":" << (v.steerable ? "steerable " : "NOT ");
  }
  const SteeringVerdict zero = is_steerable(epr_state(1, 0.0), {1, 1});
  ok = ok && !zero.steerable;
  detail << "r=0:" << (zero.steerable ? "steerable" : "not steerable");
  return {ok, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"unit classical noise fixture: gib, not eb", unit_noise_fixture},
      {"witness completeness and GIB soundness", witness_completeness},
      {"joint from postprocessings round trip", joint_roundtrip},
      {"GIB agrees with EPR steering probe", gib_vs_probe},
      {"EB implies GIB", eb_implies_gib},
      {"attenuator threshold at eta = 1/2", attenuator_threshold},
      {"closed form vs feasibility solver", closed_form_vs_sdp},
      {"Heisenberg/Schroedinger duality and sampling", duality_and_sampling},
      {"EPR steerability", epr_steerability},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
