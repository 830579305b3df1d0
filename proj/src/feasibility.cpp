#include "gaussbreak/feasibility.hpp"

#include "gaussbreak/error.hpp"
#include "gaussbreak/jacobi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace gaussbreak {

const char* to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::Feasible:
      return "feasible";
    case FeasibilityStatus::InfeasibleAtTolerance:
      return "infeasible-at-tolerance";
    case FeasibilityStatus::MaxIterations:
      return "max-iterations";
  }
  return "unknown";
}

LmiProblem::LmiProblem(VariableShape shape) : shape_(shape) {
  if (shape.rows < 0 || shape.cols < 0 ||
      (shape.kind == VariableShape::Kind::Symmetric && shape.rows != shape.cols))
    throw InvalidInput("LmiProblem: invalid variable shape");
  if (shape.kind == VariableShape::Kind::Symmetric) {
    for (Eigen::Index i = 0; i < shape.rows; ++i) {
      for (Eigen::Index j = i; j < shape.cols; ++j) {
        RealMatrix e = RealMatrix::Zero(shape.rows, shape.cols);
        e(i, j) = 1.0;
        e(j, i) = 1.0;
        basis_.push_back(std::move(e));
      }
    }
  } else {
    for (Eigen::Index i = 0; i < shape.rows; ++i) {
      for (Eigen::Index j = 0; j < shape.cols; ++j) {
        RealMatrix e = RealMatrix::Zero(shape.rows, shape.cols);
        e(i, j) = 1.0;
        basis_.push_back(std::move(e));
      }
    }
  }
}

void LmiProblem::add_constraint(std::string name, const AffineMap& map) {
  const RealMatrix zero = RealMatrix::Zero(shape_.rows, shape_.cols);
  HermitianForm constant = map(zero);
  std::vector<HermitianForm> coefficients;
  coefficients.reserve(basis_.size());
  // Off-lattice probe: distinct weights, none equal to 1.
  RealMatrix probe = zero;
  HermitianForm predicted = constant;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const HermitianForm fe = map(basis_[i]);
    if (fe.dim() != constant.dim())
      throw InvalidInput("LmiProblem constraint '" + name + "': output dimension varies");
    coefficients.push_back(fe - constant);
    const double w = 1.5 + 0.25 * static_cast<double>(i);
    probe += w * basis_[i];
    predicted = predicted + w * coefficients.back();
  }

  const HermitianForm actual = map(probe);
  const double scale = std::max(1.0, actual.max_abs());
  if ((actual - predicted).max_abs() > 1e-9 * scale)
    throw InvalidInput("LmiProblem constraint '" + name + "': map is not affine");

  constraints_.push_back({std::move(name), std::move(constant), std::move(coefficients)});
}

RealMatrix LmiProblem::unpack(const RealVector& x) const {
  if (x.size() != parameter_count()) throw InvalidInput("LmiProblem::unpack: wrong parameter count");
  RealMatrix out = RealMatrix::Zero(shape_.rows, shape_.cols);
  for (std::size_t i = 0; i < basis_.size(); ++i) out += x(static_cast<Eigen::Index>(i)) * basis_[i];
  return out;
}

HermitianForm LmiProblem::evaluate(std::size_t k, const RealVector& x) const {
  const Constraint& c = constraints_.at(k);
  RealMatrix s = c.constant.symmetric_part();
  RealMatrix a = c.constant.antisymmetric_part();
  for (std::size_t i = 0; i < c.coefficients.size(); ++i) {
    const double xi = x(static_cast<Eigen::Index>(i));
    if (xi == 0.0) continue;
    s += xi * c.coefficients[i].symmetric_part();
    a += xi * c.coefficients[i].antisymmetric_part();
  }
  return HermitianForm(s, a, c.name);
}

namespace {

// Real part of tr(H1^* H2).
double inner(const HermitianForm& h1, const HermitianForm& h2) {
  return h1.symmetric_part().cwiseProduct(h2.symmetric_part()).sum() +
         h1.antisymmetric_part().cwiseProduct(h2.antisymmetric_part()).sum();
}

struct ConeStep {
  double min_eigenvalue;
  bool within_tolerance;
  HermitianForm projection;
};

// Projection onto {h >= margin * scale}. A positive margin pulls the iterates
// strictly inside the cone, which turns the slow approach to a boundary point
// into finite convergence whenever the feasible set has that much interior.
ConeStep project_to_cone(const HermitianForm& f, double tolerance, double margin) {
  const SymmetricEigen eig = jacobi_eigen(f.embedding());
  const double scale = std::max(1.0, f.max_abs());
  RealVector clipped = eig.values.cwiseMax(margin * scale);
  const RealMatrix projected = eig.vectors * clipped.asDiagonal() * eig.vectors.transpose();
  const double threshold = tolerance * scale;
  return {eig.values(0), eig.values(0) >= -threshold, from_embedding(projected)};
}

}  // namespace

FeasibilityResult solve(const LmiProblem& problem, const SolveOptions& options) {
  if (!(options.tolerance > 0.0)) throw InvalidInput("solve: tolerance must be > 0");
  if (options.max_iterations < 1) throw InvalidInput("solve: max_iterations must be >= 1");
  if (problem.constraint_count() == 0) throw InvalidInput("solve: problem has no constraints");

  const Eigen::Index d = problem.parameter_count();
  const std::size_t m = problem.constraint_count();

  RealMatrix gram = RealMatrix::Zero(d, d);
  for (std::size_t k = 0; k < m; ++k)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = i; j < d; ++j) {
        const double g = inner(problem.coefficient(k, static_cast<std::size_t>(i)),
                               problem.coefficient(k, static_cast<std::size_t>(j)));
        gram(i, j) += g;
        if (i != j) gram(j, i) += g;
      }
  const Eigen::CompleteOrthogonalDecomposition<RealMatrix> normal(gram);

  FeasibilityResult result;
  RealVector x = RealVector::Zero(d);
  RealVector best_x = x;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_history;

  std::vector<HermitianForm> targets;
  targets.reserve(m);

  // Interior margins tried in turn; a stage ends when it stalls.
  constexpr std::array<double, 4> kMargins{1e-3, 1e-5, 1e-7, 0.0};
  std::size_t stage = 0;
  int stage_start = 0;

  for (int it = 0; it <= options.max_iterations; ++it) {
    targets.clear();
    double residual = std::numeric_limits<double>::infinity();
    bool all_ok = true;
    for (std::size_t k = 0; k < m; ++k) {
      ConeStep step = project_to_cone(problem.evaluate(k, x), options.tolerance, kMargins[stage]);
      residual = std::min(residual, step.min_eigenvalue);
      all_ok = all_ok && step.within_tolerance;
      targets.push_back(std::move(step.projection));
    }
    result.residual_trace.push_back(residual);
    result.iterations = it;

    if (all_ok) {
      result.status = FeasibilityStatus::Feasible;
      result.solution = problem.unpack(x);
      result.residual = residual;
      return result;
    }
    if (residual > best) {
      best = residual;
      best_x = x;
    }
    best_history.push_back(best);
    if (it - stage_start >= options.stall_window &&
        best - best_history[static_cast<std::size_t>(it - options.stall_window)] <
            options.stall_improvement) {
      if (stage + 1 == kMargins.size()) {
        result.status = FeasibilityStatus::InfeasibleAtTolerance;
        break;
      }
      ++stage;
      stage_start = it;
    }
    if (it == options.max_iterations || d == 0) {
      result.status = d == 0 ? FeasibilityStatus::InfeasibleAtTolerance
                             : FeasibilityStatus::MaxIterations;
      break;
    }

    RealVector rhs = RealVector::Zero(d);
    for (std::size_t k = 0; k < m; ++k) {
      const HermitianForm gap = targets[k] - problem.constant(k);
      for (Eigen::Index i = 0; i < d; ++i)
        rhs(i) += inner(problem.coefficient(k, static_cast<std::size_t>(i)), gap);
    }
    x = normal.solve(rhs);
  }

  result.solution = problem.unpack(best_x);
  result.residual = best;
  return result;
}

}  // namespace gaussbreak
