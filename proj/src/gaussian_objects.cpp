#include "gaussbreak/gaussian_objects.hpp"

#include "gaussbreak/error.hpp"

#include <cmath>
#include <sstream>

namespace gaussbreak {

namespace {

std::string shape(Eigen::Index r, Eigen::Index c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

void require_shape(const RealMatrix& m, Eigen::Index rows, Eigen::Index cols,
                   const std::string& field) {
  if (m.rows() != rows || m.cols() != cols)
    throw InvalidInput(field + ": expected " + shape(rows, cols) + ", got " +
                       shape(m.rows(), m.cols()));
  require_finite(m, field);
}

void require_length(const RealVector& v, Eigen::Index n, const std::string& field) {
  if (v.size() != n)
    throw InvalidInput(field + ": expected length " + std::to_string(n) + ", got " +
                       std::to_string(v.size()));
  require_finite(v, field);
}

std::size_t even_half(Eigen::Index n, const std::string& field) {
  if (n <= 0 || n % 2 != 0)
    throw InvalidInput(field + ": phase-space dimension must be positive and even, got " +
                       std::to_string(n));
  return static_cast<std::size_t>(n / 2);
}

Eigen::Index dim2(std::size_t modes) { return static_cast<Eigen::Index>(2 * modes); }

InvariantCheck check(std::string name, const HermitianForm& h, double tolerance) {
  return {std::move(name), check_psd(h, tolerance)};
}

}  // namespace

GaussianState::GaussianState(const RealMatrix& covariance, const RealVector& displacement)
    : modes_(even_half(covariance.rows(), "state.V")) {
  require_shape(covariance, dim2(modes_), dim2(modes_), "state.V");
  require_length(displacement, dim2(modes_), "state.r");
  covariance_ = symmetrized(covariance, "state.V");
  displacement_ = displacement;
}

GaussianChannel::GaussianChannel(const RealMatrix& a, const RealMatrix& b, const RealVector& c)
    : GaussianChannel(even_half(a.rows(), "channel.A rows"), even_half(a.cols(), "channel.A cols"),
                      a, b, c) {}

GaussianChannel::GaussianChannel(std::size_t in_modes, std::size_t out_modes,
                                 const RealMatrix& a, const RealMatrix& b, const RealVector& c)
    : in_modes_(in_modes), out_modes_(out_modes) {
  if (in_modes == 0 || out_modes == 0)
    throw InvalidInput("channel: in_modes and out_modes must be >= 1");
  require_shape(a, dim2(in_modes), dim2(out_modes), "channel.A");
  require_shape(b, dim2(out_modes), dim2(out_modes), "channel.B");
  require_length(c, dim2(out_modes), "channel.c");
  a_ = a;
  b_ = symmetrized(b, "channel.B");
  c_ = c;
}

GaussianObservable::GaussianObservable(const RealMatrix& k, const RealMatrix& l,
                                       const RealVector& m)
    : modes_(even_half(k.rows(), "observable.K rows")),
      outcome_dim_(static_cast<std::size_t>(k.cols())) {
  if (outcome_dim_ == 0) throw InvalidInput("observable.K: outcome dimension must be >= 1");
  require_shape(k, dim2(modes_), k.cols(), "observable.K");
  require_shape(l, k.cols(), k.cols(), "observable.L");
  require_length(m, k.cols(), "observable.m");
  k_ = k;
  l_ = symmetrized(l, "observable.L");
  m_ = m;
}

GaussianPostprocessing::GaussianPostprocessing(const RealMatrix& a, const RealMatrix& b,
                                               const RealVector& c)
    : source_dim_(static_cast<std::size_t>(a.rows())),
      target_dim_(static_cast<std::size_t>(a.cols())) {
  if (source_dim_ == 0 || target_dim_ == 0)
    throw InvalidInput("postprocessing.A: dimensions must be >= 1");
  require_shape(a, a.rows(), a.cols(), "postprocessing.A");
  require_shape(b, a.cols(), a.cols(), "postprocessing.B");
  require_length(c, a.cols(), "postprocessing.c");
  a_ = a;
  b_ = symmetrized(b, "postprocessing.B");
  c_ = c;
}

ValidityReport validate(const GaussianState& st, double tolerance) {
  const RealMatrix omega = symplectic_form(st.modes());
  return {{check("V + i*Omega >= 0", HermitianForm(st.covariance(), omega), tolerance)}};
}

ValidityReport validate(const GaussianChannel& ch, double tolerance) {
  const RealMatrix omega_out = symplectic_form(ch.out_modes());
  const RealMatrix omega_in = symplectic_form(ch.in_modes());
  const RealMatrix pulled = ch.a().transpose() * omega_in * ch.a();
  return {{check("B + i*Omega - i*A^T Omega A >= 0", HermitianForm(ch.b(), omega_out - pulled),
                 tolerance)}};
}

ValidityReport validate(const GaussianObservable& obs, double tolerance) {
  const RealMatrix omega = symplectic_form(obs.modes());
  const RealMatrix pulled = obs.k().transpose() * omega * obs.k();
  return {{check("L >= 0", HermitianForm::real(obs.l()), tolerance),
           check("L - i*K^T Omega K >= 0", HermitianForm(obs.l(), -pulled), tolerance)}};
}

ValidityReport validate(const GaussianPostprocessing& pp, double tolerance) {
  return {{check("B >= 0", HermitianForm::real(pp.b()), tolerance)}};
}

GaussianState vacuum_state(std::size_t n_modes) {
  if (n_modes == 0) throw InvalidInput("vacuum_state: n_modes must be >= 1");
  return GaussianState(RealMatrix::Identity(dim2(n_modes), dim2(n_modes)),
                       RealVector::Zero(dim2(n_modes)));
}

GaussianState epr_state(std::size_t n_modes_per_side, double r) {
  if (n_modes_per_side == 0) throw InvalidInput("epr_state: n_modes_per_side must be >= 1");
  if (!std::isfinite(r)) throw InvalidInput("epr_state: r must be finite");
  const Eigen::Index n = dim2(n_modes_per_side);
  RealMatrix z = RealMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) z(j, j) = (j % 2 == 0) ? 1.0 : -1.0;
  RealMatrix v(2 * n, 2 * n);
  v.topLeftCorner(n, n) = std::cosh(r) * RealMatrix::Identity(n, n);
  v.bottomRightCorner(n, n) = std::cosh(r) * RealMatrix::Identity(n, n);
  v.topRightCorner(n, n) = std::sinh(r) * z;
  v.bottomLeftCorner(n, n) = std::sinh(r) * z;
  return GaussianState(v, RealVector::Zero(2 * n));
}

GaussianObservable quadrature_observable(const RealVector& k) {
  require_finite(k, "quadrature.k");
  if (k.size() == 0 || k.isZero(0.0)) throw InvalidInput("quadrature.k: must be a nonzero vector");
  return GaussianObservable(k, RealMatrix::Zero(1, 1), RealVector::Zero(1));
}

GaussianObservable canonical_position(std::size_t n_modes) {
  if (n_modes == 0) throw InvalidInput("canonical_position: n_modes must be >= 1");
  RealMatrix k = RealMatrix::Zero(dim2(n_modes), static_cast<Eigen::Index>(n_modes));
  // Omega^T e_{q_j} = e_{p_j}.
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(n_modes); ++j) k(2 * j + 1, j) = 1.0;
  const auto m = static_cast<Eigen::Index>(n_modes);
  return GaussianObservable(k, RealMatrix::Zero(m, m), RealVector::Zero(m));
}

GaussianChannel identity_channel(std::size_t n_modes) {
  const Eigen::Index n = dim2(n_modes);
  return GaussianChannel(n_modes, n_modes, RealMatrix::Identity(n, n), RealMatrix::Zero(n, n),
                         RealVector::Zero(n));
}

GaussianChannel attenuator_channel(double eta, std::size_t n_modes) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidInput("attenuator: eta must lie in [0, 1]");
  const Eigen::Index n = dim2(n_modes);
  return GaussianChannel(n_modes, n_modes, std::sqrt(eta) * RealMatrix::Identity(n, n),
                         (1.0 - eta) * RealMatrix::Identity(n, n), RealVector::Zero(n));
}

GaussianChannel amplifier_channel(double gain, std::size_t n_modes) {
  if (!(gain >= 1.0) || !std::isfinite(gain))
    throw InvalidInput("amplifier: gain must be finite and >= 1");
  const Eigen::Index n = dim2(n_modes);
  return GaussianChannel(n_modes, n_modes, std::sqrt(gain) * RealMatrix::Identity(n, n),
                         (gain - 1.0) * RealMatrix::Identity(n, n), RealVector::Zero(n));
}

GaussianChannel classical_noise_channel(const RealMatrix& b) {
  const std::size_t modes = even_half(b.rows(), "channel.B");
  const Eigen::Index n = dim2(modes);
  return GaussianChannel(modes, modes, RealMatrix::Identity(n, n), b, RealVector::Zero(n));
}

GaussianPostprocessing identity_postprocessing(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return GaussianPostprocessing(RealMatrix::Identity(n, n), RealMatrix::Zero(n, n),
                                RealVector::Zero(n));
}

GaussianObservable apply_channel_to_observable(const GaussianChannel& ch,
                                               const GaussianObservable& obs) {
  if (obs.modes() != ch.out_modes())
    throw InvalidInput("apply_channel_to_observable: observable acts on " +
                       std::to_string(obs.modes()) + " modes but the channel outputs " +
                       std::to_string(ch.out_modes()));
  const RealMatrix& k = obs.k();
  return GaussianObservable(ch.a() * k, obs.l() + k.transpose() * ch.b() * k,
                            obs.m() + k.transpose() * ch.c());
}

GaussianState apply_channel_to_state(const GaussianChannel& ch, const GaussianState& st) {
  if (st.modes() != ch.in_modes())
    throw InvalidInput("apply_channel_to_state: state has " + std::to_string(st.modes()) +
                       " modes but the channel takes " + std::to_string(ch.in_modes()));
  const RealMatrix omega_in = symplectic_form(ch.in_modes());
  const RealMatrix omega_out = symplectic_form(ch.out_modes());
  const RealMatrix pulled = omega_in * ch.a();  // Omega A
  const RealMatrix inner = pulled.transpose() * st.covariance() * pulled + ch.b();
  const RealMatrix v = omega_out * inner * omega_out.transpose();
  const RealVector r =
      omega_out.transpose() * (ch.a().transpose() * omega_in * st.displacement() + ch.c());
  return GaussianState((v + v.transpose()) / 2.0, r);
}

GaussianChannel extend_one_sided(const GaussianChannel& ch, ModeSplit split, Side side) {
  const std::size_t acting = side == Side::A ? split.a_modes : split.b_modes;
  const std::size_t idle = side == Side::A ? split.b_modes : split.a_modes;
  if (split.a_modes == 0 || split.b_modes == 0)
    throw InvalidInput("mode split: both sides need at least one mode");
  if (acting != ch.in_modes())
    throw InvalidInput(std::string("mode split: side ") + (side == Side::A ? "A" : "B") +
                       " has " + std::to_string(acting) + " modes but the channel takes " +
                       std::to_string(ch.in_modes()));
  const Eigen::Index n_idle = dim2(idle);
  const RealMatrix id = RealMatrix::Identity(n_idle, n_idle);
  const RealMatrix zero = RealMatrix::Zero(n_idle, n_idle);
  const RealVector zv = RealVector::Zero(n_idle);
  if (side == Side::A) {
    return GaussianChannel(ch.in_modes() + idle, ch.out_modes() + idle, direct_sum(ch.a(), id),
                           direct_sum(ch.b(), zero), concat(ch.c(), zv));
  }
  return GaussianChannel(idle + ch.in_modes(), idle + ch.out_modes(), direct_sum(id, ch.a()),
                         direct_sum(zero, ch.b()), concat(zv, ch.c()));
}

GaussianState one_sided_apply(const GaussianChannel& ch, const GaussianState& st,
                              ModeSplit split, Side side) {
  if (split.a_modes + split.b_modes != st.modes())
    throw InvalidInput("mode split: " + std::to_string(split.a_modes) + "+" +
                       std::to_string(split.b_modes) + " does not match the state's " +
                       std::to_string(st.modes()) + " modes");
  return apply_channel_to_state(extend_one_sided(ch, split, side), st);
}

GaussianObservable apply_postprocessing(const GaussianPostprocessing& pp,
                                        const GaussianObservable& obs) {
  if (pp.source_dim() != obs.outcome_dim())
    throw InvalidInput("apply_postprocessing: postprocessing expects " +
                       std::to_string(pp.source_dim()) + " outcomes but the observable has " +
                       std::to_string(obs.outcome_dim()));
  const RealMatrix& a = pp.a();
  return GaussianObservable(obs.k() * a, pp.b() + a.transpose() * obs.l() * a,
                            pp.c() + a.transpose() * obs.m());
}

GaussianChannel compose_channels(const GaussianChannel& second, const GaussianChannel& first) {
  if (first.out_modes() != second.in_modes())
    throw InvalidInput("compose_channels: first channel outputs " +
                       std::to_string(first.out_modes()) + " modes but the second takes " +
                       std::to_string(second.in_modes()));
  const RealMatrix& a2 = second.a();
  return GaussianChannel(first.in_modes(), second.out_modes(), first.a() * a2,
                         second.b() + a2.transpose() * first.b() * a2,
                         second.c() + a2.transpose() * first.c());
}

}  // namespace gaussbreak
