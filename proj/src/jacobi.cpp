#include "gaussbreak/jacobi.hpp"

#include "gaussbreak/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gaussbreak {

namespace {

double off_diagonal_norm2(const RealMatrix& a) {
  double s = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
  return 2.0 * s;
}

}  // namespace

SymmetricEigen jacobi_eigen(const RealMatrix& m, int max_sweeps) {
  if (m.rows() != m.cols()) throw InvalidInput("jacobi_eigen: matrix is not square");
  const Eigen::Index n = m.rows();

  RealMatrix a = m.selfadjointView<Eigen::Upper>();
  RealMatrix v = RealMatrix::Identity(n, n);

  const double total = a.squaredNorm();
  const double eps = std::numeric_limits<double>::epsilon();
  const double stop = eps * eps * std::max(total, std::numeric_limits<double>::min());

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm2(a) <= stop) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Negligible against both diagonal entries: drop it.
        if (std::abs(apq) < eps * 1e-3 * std::sqrt(std::abs(a(p, p) * a(q, q))) &&
            sweep > 3) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // a <- J^T a J with J the (p, q) rotation.
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;

        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == max_sweeps && off_diagonal_norm2(a) > stop)
    throw NumericalFailure("jacobi_eigen: no convergence after " + std::to_string(max_sweeps) +
                           " sweeps");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = a(order[j], order[j]);
    out.vectors.col(j) = v.col(order[j]);
  }
  out.sweeps = sweep;
  return out;
}

}  // namespace gaussbreak
