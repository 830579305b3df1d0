#pragma once

#include "gaussbreak/phase_space.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gaussbreak {

/// Shape of the unknown matrix in an LMI feasibility problem.
struct VariableShape {
  enum class Kind { Symmetric, General };
  Kind kind = Kind::General;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;

  static VariableShape symmetric(Eigen::Index n) { return {Kind::Symmetric, n, n}; }
  static VariableShape general(Eigen::Index rows, Eigen::Index cols) {
    return {Kind::General, rows, cols};
  }
};

/// Find X of the given shape with F_k(X) >= 0 for every constraint, where each
/// F_k is an affine map into Hermitian forms.
class LmiProblem {
 public:
  using AffineMap = std::function<HermitianForm(const RealMatrix&)>;

  explicit LmiProblem(VariableShape shape);

  /// Registers F. The map is sampled on the zero matrix and on each basis
  /// element of the variable space to recover its affine coefficients, then
  /// checked for affinity on one more point.
  void add_constraint(std::string name, const AffineMap& map);

  const VariableShape& shape() const { return shape_; }
  Eigen::Index parameter_count() const { return static_cast<Eigen::Index>(basis_.size()); }
  std::size_t constraint_count() const { return constraints_.size(); }
  const std::string& constraint_name(std::size_t k) const { return constraints_[k].name; }

  /// Variable matrix for a parameter vector.
  RealMatrix unpack(const RealVector& x) const;
  /// F_k(X(x)).
  HermitianForm evaluate(std::size_t k, const RealVector& x) const;

  /// F_k(0) and the linear part F_k(E_i) - F_k(0) on basis element i.
  const HermitianForm& constant(std::size_t k) const { return constraints_[k].constant; }
  const HermitianForm& coefficient(std::size_t k, std::size_t i) const {
    return constraints_[k].coefficients[i];
  }

 private:
  struct Constraint {
    std::string name;
    HermitianForm constant;
    std::vector<HermitianForm> coefficients;
  };

  VariableShape shape_;
  std::vector<RealMatrix> basis_;
  std::vector<Constraint> constraints_;
};

enum class FeasibilityStatus { Feasible, InfeasibleAtTolerance, MaxIterations };

const char* to_string(FeasibilityStatus s);

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::MaxIterations;
  /// Final variable when feasible; the best iterate found otherwise.
  std::optional<RealMatrix> solution;
  /// Worst (most negative) constraint min-eigenvalue at `solution`.
  double residual = 0.0;
  int iterations = 0;
  /// Worst constraint min-eigenvalue at each iterate, starting with X = 0.
  std::vector<double> residual_trace;

  bool feasible() const { return status == FeasibilityStatus::Feasible; }
};

struct SolveOptions {
  /// Relative PSD tolerance, applied per constraint as in check_psd.
  double tolerance = kDefaultPsdTolerance;
  int max_iterations = 5000;
  /// Stagnation window: the best residual must improve by `stall_improvement`
  /// within `stall_window` iterations, otherwise the current clip level is
  /// abandoned (and after the last one, the problem is reported infeasible).
  int stall_window = 100;
  double stall_improvement = 1e-12;
};

/// Alternating projections between the affine set {(F_1(X), ..., F_m(X))} and
/// the product of PSD cones, starting from X = 0. The cone projection clips
/// the eigenvalues of each real embedding [[S, -A], [A, S]] from below; the
/// affine projection is the least-squares fit of X in the Frobenius metric.
/// The clip level runs through 1e-3, 1e-5, 1e-7 and 0 (relative to
/// max(1, max|F_k|)), moving on whenever the best residual stalls over
/// `stall_window` iterations; stalling at level 0 ends the search.
///
/// "Feasible" means the returned X satisfies every constraint under check_psd
/// at the given tolerance. The other statuses are not proofs of infeasibility.
FeasibilityResult solve(const LmiProblem& problem, const SolveOptions& options = {});

}  // namespace gaussbreak
