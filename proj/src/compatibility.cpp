#include "gaussbreak/compatibility.hpp"

#include "gaussbreak/error.hpp"

#include <cmath>
#include <numeric>

namespace gaussbreak {

std::size_t MarginSpec::total() const {
  return std::accumulate(block_dims.begin(), block_dims.end(), std::size_t{0});
}

std::size_t MarginSpec::offset(std::size_t j) const {
  if (j >= block_dims.size()) throw InvalidInput("margin index out of range");
  return std::accumulate(block_dims.begin(), block_dims.begin() + static_cast<std::ptrdiff_t>(j),
                         std::size_t{0});
}

RealMatrix MarginSpec::selector(std::size_t j) const {
  for (std::size_t d : block_dims)
    if (d == 0) throw InvalidInput("margin spec: block dimensions must be >= 1");
  const auto m = static_cast<Eigen::Index>(total());
  const auto mj = static_cast<Eigen::Index>(block_dims.at(j));
  RealMatrix a = RealMatrix::Zero(m, mj);
  a.block(static_cast<Eigen::Index>(offset(j)), 0, mj, mj).setIdentity();
  return a;
}

GaussianObservable margin(const GaussianObservable& obs, const MarginSpec& spec, std::size_t j) {
  if (spec.block_dims.empty() || spec.total() != obs.outcome_dim())
    throw InvalidInput("margin: block dimensions sum to " + std::to_string(spec.total()) +
                       " but the observable has " + std::to_string(obs.outcome_dim()) +
                       " outcomes");
  if (j >= spec.block_dims.size()) throw InvalidInput("margin: index out of range");
  const RealMatrix a = spec.selector(j);
  const Eigen::Index mj = a.cols();
  return apply_postprocessing(
      GaussianPostprocessing(a, RealMatrix::Zero(mj, mj), RealVector::Zero(mj)), obs);
}

GaussianObservable joint_from_postprocessings(const GaussianObservable& g,
                                              const std::vector<GaussianPostprocessing>& pps) {
  if (pps.empty()) throw InvalidInput("joint_from_postprocessings: no postprocessings given");
  Eigen::Index total = 0;
  for (std::size_t j = 0; j < pps.size(); ++j) {
    if (pps[j].source_dim() != g.outcome_dim())
      throw InvalidInput("joint_from_postprocessings: postprocessing " + std::to_string(j) +
                         " expects " + std::to_string(pps[j].source_dim()) +
                         " outcomes, observable has " + std::to_string(g.outcome_dim()));
    total += static_cast<Eigen::Index>(pps[j].target_dim());
  }
  // Stacked postprocessing A = (A_1, ..., A_n), B = diag(B_j). The joint
  // noise is B + A^T L A; its diagonal blocks are the postprocessed noises and
  // the off-diagonal blocks A_j^T L A_k are required for validity.
  RealMatrix a(static_cast<Eigen::Index>(g.outcome_dim()), total);
  RealMatrix b = RealMatrix::Zero(total, total);
  RealVector c(total);
  Eigen::Index at = 0;
  for (const auto& pp : pps) {
    const auto mj = static_cast<Eigen::Index>(pp.target_dim());
    a.middleCols(at, mj) = pp.a();
    b.block(at, at, mj, mj) = pp.b();
    c.segment(at, mj) = pp.c();
    at += mj;
  }
  RealMatrix k = g.k() * a;
  RealMatrix l = b + a.transpose() * g.l() * a;
  RealVector m = c + a.transpose() * g.m();
  return GaussianObservable(k, l, m);
}

CompatibilityVerdict pair_compatible(const GaussianObservable& e1, const GaussianObservable& e2,
                                     const SolveOptions& options) {
  if (e1.modes() != e2.modes())
    throw InvalidInput("pair_compatible: observables act on " + std::to_string(e1.modes()) +
                       " and " + std::to_string(e2.modes()) + " modes");
  const auto m1 = static_cast<Eigen::Index>(e1.outcome_dim());
  const auto m2 = static_cast<Eigen::Index>(e2.outcome_dim());

  RealMatrix k(e1.k().rows(), m1 + m2);
  k << e1.k(), e2.k();
  const RealVector m = concat(e1.m(), e2.m());
  const RealMatrix pulled = k.transpose() * symplectic_form(e1.modes()) * k;
  const RealMatrix l_diag = direct_sum(e1.l(), e2.l());

  const auto assemble = [&](const RealMatrix& x) {
    RealMatrix l = l_diag;
    l.topRightCorner(m1, m2) = x;
    l.bottomLeftCorner(m2, m1) = x.transpose();
    return l;
  };

  LmiProblem problem(VariableShape::general(m1, m2));
  problem.add_constraint("L - i K^T Omega K", [&](const RealMatrix& x) {
    return HermitianForm(assemble(x), -pulled, "joint L - iK^T Omega K");
  });
  FeasibilityResult fr = solve(problem, options);

  CompatibilityVerdict v;
  v.compatible = fr.feasible();
  v.min_eigenvalue = fr.residual;
  v.certificate = fr.residual;
  v.at_boundary = std::abs(fr.residual) <= kCompatibilityBoundary;
  v.completion = fr.solution;
  if (v.compatible) v.joint = GaussianObservable(k, assemble(*fr.solution), m);
  v.solver = std::move(fr);
  return v;
}

CompatibilityVerdict quad_pair_compatible(const RealVector& x, double lx, const RealVector& y,
                                          double ly, double mx, double my) {
  require_finite(x, "quadrature pair x");
  require_finite(y, "quadrature pair y");
  if (x.size() != y.size() || x.size() == 0 || x.size() % 2 != 0)
    throw InvalidInput("quad_pair_compatible: x and y must have the same even length");
  if (x.isZero(0.0) || y.isZero(0.0))
    throw InvalidInput("quad_pair_compatible: zero quadrature vector");
  if (!(lx >= 0.0) || !(ly >= 0.0) || !std::isfinite(lx) || !std::isfinite(ly))
    throw InvalidInput("quad_pair_compatible: noise parameters must be finite and >= 0");

  const auto modes = static_cast<std::size_t>(x.size() / 2);
  const double s = x.dot(symplectic_form(modes) * y);
  const double cert = lx * ly - s * s;

  CompatibilityVerdict v;
  v.certificate = cert;
  v.compatible = cert >= -kCompatibilityBoundary;
  v.at_boundary = std::abs(cert) <= kCompatibilityBoundary;
  v.completion = RealMatrix::Zero(1, 1);
  // Eigenvalues of [[lx, -is], [is, ly]].
  v.min_eigenvalue = 0.5 * (lx + ly) - std::sqrt(0.25 * (lx - ly) * (lx - ly) + s * s);
  if (v.compatible) {
    RealMatrix k(x.size(), 2);
    k << x, y;
    RealMatrix l = RealMatrix::Zero(2, 2);
    l(0, 0) = lx;
    l(1, 1) = ly;
    v.joint = GaussianObservable(k, l, RealVector{{mx, my}});
  }
  return v;
}

}  // namespace gaussbreak
