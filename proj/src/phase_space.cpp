#include "gaussbreak/phase_space.hpp"

#include "gaussbreak/error.hpp"
#include "gaussbreak/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gaussbreak {

RealMatrix symplectic_form(std::size_t n_modes) {
  if (n_modes == 0) throw InvalidInput("symplectic_form: n_modes must be >= 1");
  const auto n = static_cast<Eigen::Index>(2 * n_modes);
  RealMatrix omega = RealMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; j += 2) {
    omega(j, j + 1) = 1.0;
    omega(j + 1, j) = -1.0;
  }
  return omega;
}

double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_finite(const RealMatrix& m, const std::string& field) {
  if (!m.allFinite()) throw InvalidInput(field + ": contains NaN or infinite entries");
}

void require_finite(const RealVector& v, const std::string& field) {
  if (!v.allFinite()) throw InvalidInput(field + ": contains NaN or infinite entries");
}

namespace {

void require_square(const RealMatrix& m, const std::string& field) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << field << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw InvalidInput(os.str());
  }
}

}  // namespace

RealMatrix symmetrized(const RealMatrix& m, const std::string& field) {
  require_square(m, field);
  require_finite(m, field);
  const double asym = max_abs(m - m.transpose()) / 2.0;
  if (asym > kSymmetryRejection * std::max(1.0, max_abs(m))) {
    std::ostringstream os;
    os << field << ": not symmetric (max |m - m^T|/2 = " << asym << ")";
    throw InvalidInput(os.str());
  }
  return (m + m.transpose()) / 2.0;
}

RealMatrix antisymmetrized(const RealMatrix& m, const std::string& field) {
  require_square(m, field);
  require_finite(m, field);
  const double sym = max_abs(m + m.transpose()) / 2.0;
  if (sym > kSymmetryRejection * std::max(1.0, max_abs(m))) {
    std::ostringstream os;
    os << field << ": not antisymmetric (max |m + m^T|/2 = " << sym << ")";
    throw InvalidInput(os.str());
  }
  return (m - m.transpose()) / 2.0;
}

HermitianForm::HermitianForm(const RealMatrix& symmetric_part,
                             const RealMatrix& antisymmetric_part, const std::string& field)
    : symmetric_(symmetrized(symmetric_part, field + " (real part)")),
      antisymmetric_(antisymmetrized(antisymmetric_part, field + " (imaginary part)")) {
  if (symmetric_.rows() != antisymmetric_.rows()) {
    std::ostringstream os;
    os << field << ": real part is " << symmetric_.rows() << "x" << symmetric_.rows()
       << " but imaginary part is " << antisymmetric_.rows() << "x" << antisymmetric_.rows();
    throw InvalidInput(os.str());
  }
}

HermitianForm::HermitianForm(Trusted, RealMatrix s, RealMatrix a)
    : symmetric_(std::move(s)), antisymmetric_(std::move(a)) {}

HermitianForm HermitianForm::real(const RealMatrix& symmetric_part, const std::string& field) {
  return HermitianForm(symmetric_part,
                       RealMatrix::Zero(symmetric_part.rows(), symmetric_part.cols()), field);
}

RealMatrix HermitianForm::embedding() const {
  const Eigen::Index n = dim();
  RealMatrix e(2 * n, 2 * n);
  e.topLeftCorner(n, n) = symmetric_;
  e.topRightCorner(n, n) = -antisymmetric_;
  e.bottomLeftCorner(n, n) = antisymmetric_;
  e.bottomRightCorner(n, n) = symmetric_;
  return e;
}

HermitianForm HermitianForm::conjugate() const {
  return HermitianForm(Trusted{}, symmetric_, -antisymmetric_);
}

double HermitianForm::max_abs() const {
  return std::max(gaussbreak::max_abs(symmetric_), gaussbreak::max_abs(antisymmetric_));
}

double HermitianForm::quadratic(const ComplexVector& z) const {
  if (z.size() != dim()) throw InvalidInput("HermitianForm::quadratic: vector dimension mismatch");
  const RealVector u = z.real();
  const RealVector v = z.imag();
  // (u - iv)^T (S + iA)(u + iv), imaginary part vanishes.
  return u.dot(symmetric_ * u) + v.dot(symmetric_ * v) + 2.0 * v.dot(antisymmetric_ * u);
}

HermitianForm operator+(const HermitianForm& a, const HermitianForm& b) {
  if (a.dim() != b.dim()) throw InvalidInput("HermitianForm +: dimension mismatch");
  return HermitianForm(HermitianForm::Trusted{}, a.symmetric_ + b.symmetric_,
                       a.antisymmetric_ + b.antisymmetric_);
}

HermitianForm operator-(const HermitianForm& a, const HermitianForm& b) {
  if (a.dim() != b.dim()) throw InvalidInput("HermitianForm -: dimension mismatch");
  return HermitianForm(HermitianForm::Trusted{}, a.symmetric_ - b.symmetric_,
                       a.antisymmetric_ - b.antisymmetric_);
}

HermitianForm operator*(double s, const HermitianForm& h) {
  return HermitianForm(HermitianForm::Trusted{}, s * h.symmetric_, s * h.antisymmetric_);
}

HermitianForm from_embedding(const RealMatrix& embedded) {
  if (embedded.rows() != embedded.cols() || embedded.rows() % 2 != 0)
    throw InvalidInput("from_embedding: expected a square matrix of even size");
  const Eigen::Index n = embedded.rows() / 2;
  RealMatrix s = (embedded.topLeftCorner(n, n) + embedded.bottomRightCorner(n, n)) / 2.0;
  RealMatrix a = (embedded.bottomLeftCorner(n, n) - embedded.topRightCorner(n, n)) / 2.0;
  s = (s + s.transpose()).eval() / 2.0;
  a = (a - a.transpose()).eval() / 2.0;
  return HermitianForm(s, a, "embedded form");
}

namespace {

ComplexVector to_complex(const RealVector& stacked) {
  const Eigen::Index n = stacked.size() / 2;
  ComplexVector z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = {stacked(i), stacked(n + i)};
  return z;
}

}  // namespace

std::vector<Eigenpair> hermitian_eigenpairs(const HermitianForm& h) {
  const Eigen::Index n = h.dim();
  const SymmetricEigen eig = jacobi_eigen(h.embedding());

  // Embedding eigenvectors come in pairs (u; v), (-v; u) spanning one complex
  // direction. Greedily keep n of them that are orthogonal as complex vectors.
  std::vector<Eigenpair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < 2 * n && static_cast<Eigen::Index>(pairs.size()) < n; ++j) {
    ComplexVector z = to_complex(eig.vectors.col(j));
    for (const auto& p : pairs) z -= p.vector.dot(z) * p.vector;
    const double norm = z.norm();
    if (norm < 0.5) continue;
    pairs.push_back({eig.values(j), z / norm});
  }
  if (static_cast<Eigen::Index>(pairs.size()) != n)
    throw NumericalFailure("hermitian_eigenpairs: could not separate complex eigenvectors");
  for (auto& p : pairs) p.value = h.quadratic(p.vector);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Eigenpair& a, const Eigenpair& b) { return a.value < b.value; });
  return pairs;
}

Eigenpair min_eig_vector(const HermitianForm& h) {
  const SymmetricEigen eig = jacobi_eigen(h.embedding());
  ComplexVector z = to_complex(eig.vectors.col(0));
  z /= z.norm();
  return {eig.values(0), z};
}

PsdVerdict check_psd(const HermitianForm& h, double tolerance) {
  if (!(tolerance >= 0.0)) throw InvalidInput("check_psd: tolerance must be >= 0");
  const Eigenpair e = min_eig_vector(h);
  PsdVerdict v;
  v.tolerance_used = tolerance * std::max(1.0, h.max_abs());
  v.min_eigenvalue = e.value;
  v.witness = e.vector;
  v.is_psd = e.value >= -v.tolerance_used;
  return v;
}

RealMatrix direct_sum(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out = RealMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

RealVector concat(const RealVector& a, const RealVector& b) {
  RealVector out(a.size() + b.size());
  out << a, b;
  return out;
}

}  // namespace gaussbreak
