#include "gaussbreak/distributions.hpp"

#include "gaussbreak/error.hpp"
#include "gaussbreak/jacobi.hpp"

#include <cmath>
#include <random>

namespace gaussbreak {

OutcomeGaussian outcome_distribution(const GaussianState& st, const GaussianObservable& obs) {
  if (st.modes() != obs.modes())
    throw InvalidInput("outcome_distribution: state has " + std::to_string(st.modes()) +
                       " modes, observable acts on " + std::to_string(obs.modes()));
  const RealMatrix omega = symplectic_form(st.modes());
  const RealMatrix ok = omega * obs.k();
  RealMatrix cov = 0.5 * (ok.transpose() * st.covariance() * ok + obs.l());
  cov = (cov + cov.transpose()).eval() / 2.0;
  const RealVector mean = -(obs.k().transpose() * omega * st.displacement() + obs.m());
  return {mean, cov};
}

namespace {

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

std::vector<RealVector> sample(const OutcomeGaussian& d, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("sample: n must be >= 1");
  const Eigen::Index dim = d.mean.size();
  if (d.covariance.rows() != dim || d.covariance.cols() != dim)
    throw InvalidInput("sample: covariance shape does not match the mean");
  require_finite(d.mean, "sample.mean");
  const PsdVerdict psd = check_psd(HermitianForm::real(d.covariance, "sample.covariance"));
  if (!psd.is_psd) throw InvalidInput("sample.covariance: not positive semidefinite");

  const SymmetricEigen eig = jacobi_eigen(d.covariance);
  RealMatrix factor = eig.vectors;
  for (Eigen::Index j = 0; j < dim; ++j) factor.col(j) *= std::sqrt(std::max(eig.values(j), 0.0));

  NormalStream normals(seed);
  std::vector<RealVector> out;
  out.reserve(n);
  RealVector z(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) z(j) = normals.next();
    out.push_back(d.mean + factor * z);
  }
  return out;
}

double moment_distance(const OutcomeGaussian& a, const OutcomeGaussian& b) {
  if (a.mean.size() != b.mean.size() || a.covariance.rows() != b.covariance.rows() ||
      a.covariance.cols() != b.covariance.cols())
    throw InvalidInput("moment_distance: dimension mismatch");
  const double dmean = (a.mean - b.mean).norm();
  const RealMatrix diff = a.covariance - b.covariance;
  const SymmetricEigen eig = jacobi_eigen((diff + diff.transpose()) / 2.0);
  double spectral = 0.0;
  for (Eigen::Index j = 0; j < eig.values.size(); ++j)
    spectral = std::max(spectral, std::abs(eig.values(j)));
  return std::max(dmean, spectral);
}

}  // namespace gaussbreak
