#pragma once

// Gaussian states, channels, observables and classical postprocessings in
// their matrix parameterisation.
//
// Conventions:
//  * Phase-space ordering is (q1, p1, ..., qN, pN) and Omega is
//    symplectic_form(N).
//  * Covariance matrices use the anticommutator without a 1/2 factor, so the
//    vacuum has V = I (not I/2). States are valid iff V + i*Omega >= 0.
//  * A channel (A, B, c) acts on Weyl operators in the Heisenberg picture,
//    W(x) -> W(Ax) exp(-x^T B x / 4 - i c^T x). Its Schroedinger input has
//    in_modes = N and its output has out_modes = N', so A is 2N x 2N' and
//    B, c live on the 2N'-dimensional output phase space.
//  * An observable (K, L, m) on N modes with M outcomes has operator-valued
//    Fourier transform W(Kp) exp(-p^T L p / 4 - i m^T p), K is 2N x M.
//  * A postprocessing (A, B, c) maps M outcomes to M' outcomes; A is M x M'.

#include "gaussbreak/phase_space.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace gaussbreak {

class GaussianState {
 public:
  /// Throws InvalidInput if V is not square of even size, not symmetric,
  /// or r has the wrong length. Physical validity is checked by validate().
  GaussianState(const RealMatrix& covariance, const RealVector& displacement);

  std::size_t modes() const { return modes_; }
  const RealMatrix& covariance() const { return covariance_; }
  const RealVector& displacement() const { return displacement_; }

 private:
  std::size_t modes_;
  RealMatrix covariance_;
  RealVector displacement_;
};

class GaussianChannel {
 public:
  /// Mode counts are read off A (2*in_modes x 2*out_modes).
  GaussianChannel(const RealMatrix& a, const RealMatrix& b, const RealVector& c);
  /// Same, additionally checking A against the declared mode counts.
  GaussianChannel(std::size_t in_modes, std::size_t out_modes, const RealMatrix& a,
                  const RealMatrix& b, const RealVector& c);

  std::size_t in_modes() const { return in_modes_; }
  std::size_t out_modes() const { return out_modes_; }
  const RealMatrix& a() const { return a_; }
  const RealMatrix& b() const { return b_; }
  const RealVector& c() const { return c_; }

 private:
  std::size_t in_modes_;
  std::size_t out_modes_;
  RealMatrix a_;
  RealMatrix b_;
  RealVector c_;
};

class GaussianObservable {
 public:
  GaussianObservable(const RealMatrix& k, const RealMatrix& l, const RealVector& m);

  std::size_t modes() const { return modes_; }
  std::size_t outcome_dim() const { return outcome_dim_; }
  const RealMatrix& k() const { return k_; }
  const RealMatrix& l() const { return l_; }
  const RealVector& m() const { return m_; }

 private:
  std::size_t modes_;
  std::size_t outcome_dim_;
  RealMatrix k_;
  RealMatrix l_;
  RealVector m_;
};

class GaussianPostprocessing {
 public:
  GaussianPostprocessing(const RealMatrix& a, const RealMatrix& b, const RealVector& c);

  std::size_t source_dim() const { return source_dim_; }
  std::size_t target_dim() const { return target_dim_; }
  const RealMatrix& a() const { return a_; }
  const RealMatrix& b() const { return b_; }
  const RealVector& c() const { return c_; }

 private:
  std::size_t source_dim_;
  std::size_t target_dim_;
  RealMatrix a_;
  RealMatrix b_;
  RealVector c_;
};

struct InvariantCheck {
  std::string name;
  PsdVerdict verdict;
};

struct ValidityReport {
  std::vector<InvariantCheck> checks;

  bool valid() const {
    for (const auto& c : checks)
      if (!c.verdict.is_psd) return false;
    return true;
  }
};

/// Uncertainty relation V + i*Omega >= 0.
ValidityReport validate(const GaussianState& st, double tolerance = kDefaultPsdTolerance);
/// Complete positivity B + i*Omega' - i*A^T Omega A >= 0.
ValidityReport validate(const GaussianChannel& ch, double tolerance = kDefaultPsdTolerance);
/// L >= 0 and L - i*K^T Omega K >= 0.
ValidityReport validate(const GaussianObservable& obs, double tolerance = kDefaultPsdTolerance);
/// B >= 0.
ValidityReport validate(const GaussianPostprocessing& pp,
                        double tolerance = kDefaultPsdTolerance);

// ---- constructors for the standard families ----

GaussianState vacuum_state(std::size_t n_modes);

/// Two-sided squeezed pure state on 2N modes, Alice's N modes first:
/// V = [[cosh r I, sinh r Z], [sinh r Z, cosh r I]], Z = diag(1, -1, ...).
GaussianState epr_state(std::size_t n_modes_per_side, double r);

/// Generalised quadrature (K = k, L = 0, m = 0) with a single outcome. Its
/// outcome is the spectral value of -k^T Omega R, so k = (0, 1) reads out
/// position and k = (-1, 0) momentum on one mode.
GaussianObservable quadrature_observable(const RealVector& k);

/// Observable on n_modes modes with n_modes outcomes reading out every
/// position quadrature Q_j: K = Omega^T S where S selects q-coordinates,
/// L = 0, m = 0. See docs/format.md for the sign conventions.
GaussianObservable canonical_position(std::size_t n_modes);

GaussianChannel identity_channel(std::size_t n_modes);
/// (sqrt(eta) I, (1 - eta) I, 0) on n_modes modes.
GaussianChannel attenuator_channel(double eta, std::size_t n_modes = 1);
/// (sqrt(g) I, (g - 1) I, 0) on n_modes modes, g >= 1.
GaussianChannel amplifier_channel(double gain, std::size_t n_modes = 1);
/// Random-displacement channel (I, B, 0).
GaussianChannel classical_noise_channel(const RealMatrix& b);

GaussianPostprocessing identity_postprocessing(std::size_t dim);

// ---- actions ----

/// Heisenberg action: (K, L, m) -> (AK, L + K^T B K, m + K^T c).
/// Requires obs.modes() == ch.out_modes(); the result lives on ch.in_modes().
GaussianObservable apply_channel_to_observable(const GaussianChannel& ch,
                                               const GaussianObservable& obs);

/// Schroedinger action: V' = Omega (A^T Omega^T V Omega A + B) Omega^T,
/// r' = Omega^T (A^T Omega r + c). Requires st.modes() == ch.in_modes().
GaussianState apply_channel_to_state(const GaussianChannel& ch, const GaussianState& st);

enum class Side { A, B };

/// Modes of a bipartite state; side A occupies the leading coordinates.
struct ModeSplit {
  std::size_t a_modes = 0;
  std::size_t b_modes = 0;
};

/// Channel acting on one party of a bipartite state, extended by the identity
/// on the other: (A (+) I, B (+) 0, c (+) 0) for side A.
GaussianChannel extend_one_sided(const GaussianChannel& ch, ModeSplit split, Side side);

/// apply_channel_to_state with extend_one_sided(ch, split, side).
GaussianState one_sided_apply(const GaussianChannel& ch, const GaussianState& st,
                              ModeSplit split, Side side);

/// (K, L, m) -> (KA, B + A^T L A, c + A^T m).
GaussianObservable apply_postprocessing(const GaussianPostprocessing& pp,
                                        const GaussianObservable& obs);

/// Schroedinger-order composition `second` after `first`:
/// (A1 A2, B2 + A2^T B1 A2, c2 + A2^T c1).
GaussianChannel compose_channels(const GaussianChannel& second, const GaussianChannel& first);

}  // namespace gaussbreak
