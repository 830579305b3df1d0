#include "gaussbreak/classification.hpp"

#include "gaussbreak/error.hpp"

#include <algorithm>
#include <cmath>

namespace gaussbreak {

namespace {

void require_valid(const GaussianChannel& ch, const char* op) {
  const ValidityReport report = validate(ch);
  if (!report.valid())
    throw InvalidInput(std::string(op) + ": channel violates complete positivity (min eigenvalue " +
                       std::to_string(report.checks.front().verdict.min_eigenvalue) + ")");
}

RealMatrix pulled_back_form(const GaussianChannel& ch) {
  return ch.a().transpose() * symplectic_form(ch.in_modes()) * ch.a();
}

bool near_boundary(const PsdVerdict& v, double scale) {
  return std::abs(v.min_eigenvalue) <= kClassificationBoundary * std::max(1.0, scale);
}

}  // namespace

const char* to_string(EbStatus s) {
  switch (s) {
    case EbStatus::Feasible:
      return "feasible";
    case EbStatus::Infeasible:
      return "infeasible-at-tolerance";
    case EbStatus::Undecided:
      return "undecided-at-tolerance";
  }
  return "unknown";
}

PsdVerdict is_gib(const GaussianChannel& ch, double tolerance) {
  require_valid(ch, "is_gib");
  return check_psd(HermitianForm(ch.b(), -pulled_back_form(ch), "B - i A^T Omega A"), tolerance);
}

EbResult is_eb(const GaussianChannel& ch, const SolveOptions& options) {
  require_valid(ch, "is_eb");
  const RealMatrix omega = symplectic_form(ch.out_modes());
  const RealMatrix pulled = pulled_back_form(ch);
  const RealMatrix& b = ch.b();

  LmiProblem problem(VariableShape::symmetric(b.rows()));
  problem.add_constraint("B1 + i Omega",
                         [&](const RealMatrix& b1) { return HermitianForm(b1, omega); });
  problem.add_constraint("(B - B1) - i A^T Omega A",
                         [&](const RealMatrix& b1) { return HermitianForm(b - b1, -pulled); });

  EbResult out;
  out.solver = solve(problem, options);
  switch (out.solver.status) {
    case FeasibilityStatus::Feasible: {
      const RealMatrix& b1 = *out.solver.solution;
      const PsdVerdict v1 = check_psd(HermitianForm(b1, omega), options.tolerance);
      const PsdVerdict v2 = check_psd(HermitianForm(b - b1, -pulled), options.tolerance);
      if (v1.is_psd && v2.is_psd) {
        out.status = EbStatus::Feasible;
        out.certificate = EbCertificate{b1, v1.min_eigenvalue, v2.min_eigenvalue};
      } else {
        out.status = EbStatus::Undecided;
      }
      break;
    }
    case FeasibilityStatus::InfeasibleAtTolerance:
      out.status = EbStatus::Infeasible;
      break;
    case FeasibilityStatus::MaxIterations:
      out.status = EbStatus::Undecided;
      break;
  }
  return out;
}

SteeringVerdict is_steerable(const GaussianState& st, ModeSplit split, double tolerance) {
  if (split.a_modes == 0 || split.b_modes == 0 || split.a_modes + split.b_modes != st.modes())
    throw InvalidInput("is_steerable: split " + std::to_string(split.a_modes) + "," +
                       std::to_string(split.b_modes) + " does not partition " +
                       std::to_string(st.modes()) + " modes");
  if (!validate(st, tolerance).valid())
    throw InvalidInput("is_steerable: state violates the uncertainty relation");
  const auto na = static_cast<Eigen::Index>(2 * split.a_modes);
  const RealMatrix imag = direct_sum(RealMatrix::Zero(na, na), symplectic_form(split.b_modes));
  SteeringVerdict v;
  v.verdict = check_psd(HermitianForm(st.covariance(), imag, "V + i(0 + Omega)"), tolerance);
  v.steerable = !v.verdict.is_psd;
  return v;
}

SteerabilityBreakingReport is_steerability_breaking(const GaussianChannel& ch,
                                                    const std::vector<double>& r_grid,
                                                    double tolerance) {
  SteerabilityBreakingReport rep;
  rep.gib = is_gib(ch, tolerance);
  rep.breaking = rep.gib.is_psd;

  const RealMatrix omega = symplectic_form(ch.out_modes());
  rep.kernel_limit = min_eig_vector(HermitianForm(omega * ch.b() * omega.transpose(),
                                                  -omega * pulled_back_form(ch) * omega.transpose()))
                         .value;

  const ModeSplit before{ch.in_modes(), ch.in_modes()};
  const ModeSplit after{ch.out_modes(), ch.in_modes()};
  bool any_steerable = false;
  for (double r : r_grid) {
    const GaussianState st = one_sided_apply(ch, epr_state(ch.in_modes(), r), before, Side::A);
    const SteeringVerdict sv = is_steerable(st, after, tolerance);
    rep.probe.push_back({r, sv.verdict.min_eigenvalue, sv.steerable});
    any_steerable = any_steerable || sv.steerable;
  }
  rep.probe_agrees = rep.breaking ? !any_steerable : any_steerable;
  return rep;
}

bool is_classical_noise(const GaussianChannel& ch) {
  if (ch.in_modes() != ch.out_modes()) return false;
  const RealMatrix id = RealMatrix::Identity(ch.a().rows(), ch.a().cols());
  return max_abs(ch.a() - id) <= kDefaultPsdTolerance;
}

ClassicalNoiseFlags classify_classical_noise(const GaussianChannel& ch,
                                             const SolveOptions& options) {
  if (!is_classical_noise(ch))
    throw InvalidInput("classify_classical_noise: channel.A is not the identity, so this is not a "
                       "classical noise channel");
  ClassicalNoiseFlags flags;
  flags.gib = check_psd(HermitianForm(ch.b(), symplectic_form(ch.out_modes()), "B + i Omega"),
                        options.tolerance);
  flags.eb = is_eb(ch, options);
  flags.noise_is_gaussian_state_wigner = flags.gib.is_psd;
  return flags;
}

ChannelReport classify(const GaussianChannel& ch, const std::vector<double>& r_grid,
                       const SolveOptions& options) {
  ChannelReport rep;
  rep.valid = validate(ch, options.tolerance).checks.front().verdict;
  if (!rep.valid.is_psd) return rep;
  rep.gib = is_gib(ch, options.tolerance);
  rep.gib_at_boundary =
      near_boundary(*rep.gib, std::max(max_abs(ch.b()), max_abs(pulled_back_form(ch))));
  rep.eb = is_eb(ch, options);
  rep.steering = is_steerability_breaking(ch, r_grid, options.tolerance);
  if (is_classical_noise(ch)) rep.classical_noise = classify_classical_noise(ch, options);
  return rep;
}

}  // namespace gaussbreak
