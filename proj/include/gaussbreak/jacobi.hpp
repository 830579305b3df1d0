#pragma once

#include "gaussbreak/phase_space.hpp"

namespace gaussbreak {

/// Eigen-decomposition of a real symmetric matrix. Eigenvalues ascending;
/// column j of `vectors` belongs to `values[j]`.
struct SymmetricEigen {
  RealVector values;
  RealMatrix vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
/// machine precision relative to the total norm. Only the upper triangle of
/// `m` is read. Throws NumericalFailure if `max_sweeps` is exhausted, which
/// does not happen for finite input in practice (the method converges
/// quadratically once off-diagonal mass is small).
SymmetricEigen jacobi_eigen(const RealMatrix& m, int max_sweeps = 100);

}  // namespace gaussbreak
