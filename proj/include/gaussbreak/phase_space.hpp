#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace gaussbreak {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

/// Relative PSD tolerance. A form h is accepted when its smallest eigenvalue
/// is >= -kDefaultPsdTolerance * max(1, max|h_ij|), so exact boundary cases
/// such as the vacuum (I + i*Omega has eigenvalue 0) classify as PSD.
inline constexpr double kDefaultPsdTolerance = 1e-9;

/// Relative asymmetry above which a symmetric/antisymmetric block is rejected
/// instead of being silently symmetrized.
inline constexpr double kSymmetryRejection = 1e-8;

/// Standard symplectic form on n_modes modes, block diagonal with copies of
/// [[0, 1], [-1, 0]] in (q1, p1, ..., qN, pN) ordering.
RealMatrix symplectic_form(std::size_t n_modes);

/// Largest absolute entry; 0 for empty matrices.
double max_abs(const RealMatrix& m);

/// Throws InvalidInput naming `field` when any entry is NaN or infinite.
void require_finite(const RealMatrix& m, const std::string& field);
void require_finite(const RealVector& v, const std::string& field);

/// Returns (m + m^T)/2; rejects m when the asymmetry exceeds kSymmetryRejection
/// relative to max(1, max|m|).
RealMatrix symmetrized(const RealMatrix& m, const std::string& field);
/// Returns (m - m^T)/2 under the same rejection rule.
RealMatrix antisymmetrized(const RealMatrix& m, const std::string& field);

/// Complex Hermitian matrix S + iA held as its real symmetric part S and real
/// antisymmetric part A.
class HermitianForm {
 public:
  HermitianForm(const RealMatrix& symmetric_part, const RealMatrix& antisymmetric_part,
                const std::string& field = "hermitian form");

  /// S + i0.
  static HermitianForm real(const RealMatrix& symmetric_part,
                            const std::string& field = "hermitian form");

  Eigen::Index dim() const { return symmetric_.rows(); }
  const RealMatrix& symmetric_part() const { return symmetric_; }
  const RealMatrix& antisymmetric_part() const { return antisymmetric_; }

  /// Real symmetric embedding [[S, -A], [A, S]]. Its spectrum is the spectrum
  /// of S + iA with every eigenvalue doubled.
  RealMatrix embedding() const;

  /// Complex conjugate S - iA (equivalently the transpose).
  HermitianForm conjugate() const;

  double max_abs() const;

  /// Real number conj(z)^T (S + iA) z.
  double quadratic(const ComplexVector& z) const;

  friend HermitianForm operator+(const HermitianForm& a, const HermitianForm& b);
  friend HermitianForm operator-(const HermitianForm& a, const HermitianForm& b);
  friend HermitianForm operator*(double s, const HermitianForm& h);

 private:
  struct Trusted {};
  HermitianForm(Trusted, RealMatrix s, RealMatrix a);

  RealMatrix symmetric_;
  RealMatrix antisymmetric_;
};

/// Extracts the Hermitian form encoded by a (nearly) complex-structured real
/// symmetric 2n x 2n matrix, averaging the redundant blocks.
HermitianForm from_embedding(const RealMatrix& embedded);

struct PsdVerdict {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  /// Unit eigenvector for min_eigenvalue; when is_psd is false it is a
  /// violating direction: conj(z)^T h z = min_eigenvalue < 0.
  ComplexVector witness;
  /// Absolute threshold actually applied: tolerance * max(1, max|h|).
  double tolerance_used = 0.0;
};

/// Decides h >= -tolerance*max(1, max|h|). Eigenvalues come from cyclic Jacobi
/// applied to the real embedding [[S, -A], [A, S]].
PsdVerdict check_psd(const HermitianForm& h, double tolerance = kDefaultPsdTolerance);

struct Eigenpair {
  double value = 0.0;
  ComplexVector vector;
};

/// Smallest eigenvalue of S + iA and a unit eigenvector z = u + iv recovered
/// from an embedding eigenvector (u; v).
Eigenpair min_eig_vector(const HermitianForm& h);

/// All eigenpairs of S + iA in ascending order. Each complex eigenvalue
/// appears once; eigenvectors are orthonormal.
std::vector<Eigenpair> hermitian_eigenpairs(const HermitianForm& h);

/// Block diagonal direct sum.
RealMatrix direct_sum(const RealMatrix& a, const RealMatrix& b);
RealVector concat(const RealVector& a, const RealVector& b);

}  // namespace gaussbreak
