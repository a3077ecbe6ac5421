#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "papr/fft.hpp"
#include "papr/numeric.hpp"
#include "papr/types.hpp"

namespace papr {

// Uniform time grid t_i = i / (J*K), i = 0..JK-1, on the unit symbol interval.
struct SamplingGrid {
  Eigen::Index oversampling = 1;  // J
  Eigen::Index symbols = 1;       // K

  SamplingGrid(Eigen::Index J, Eigen::Index K) : oversampling(J), symbols(K) {
    if (J < 1) throw std::invalid_argument("oversampling factor must be >= 1");
    if (K < 1) throw std::invalid_argument("symbol count must be >= 1");
  }

  Eigen::Index sample_count() const { return oversampling * symbols; }

  template <class Real>
  Real time(Eigen::Index i) const {
    return static_cast<Real>(i) / static_cast<Real>(sample_count());
  }
};

// s(t) = sum_k A_k exp(2 pi j k t), unit symbol duration, t in [0, 1).
template <class Derived>
typename Derived::Scalar baseband_sample(
    const Eigen::MatrixBase<Derived>& c,
    typename Derived::RealScalar t) {
  using Real = typename Derived::RealScalar;
  using Complex = typename Derived::Scalar;
  if (!(t >= Real(0) && t < Real(1)))
    throw std::domain_error("sample time must lie in [0, 1)");
  Complex acc(0, 0);
  const Real two_pi_t = 2 * std::numbers::pi_v<Real> * t;
  for (Eigen::Index k = 0; k < c.size(); ++k)
    acc += c(k) * std::polar(Real(1), two_pi_t * static_cast<Real>(k));
  return acc;
}

// Envelope on the whole grid, evaluated as a length-JK inverse DFT of the
// zero-padded symbol vector.
template <class Real>
CVector<Real> envelope_samples(const Codeword<Real>& c, const SamplingGrid& grid) {
  if (grid.symbols != c.size())
    throw std::invalid_argument("grid symbol count does not match codeword");
  const Eigen::Index n = grid.sample_count();
  CVector<Real> padded = CVector<Real>::Zero(n);
  padded.head(c.size()) = c;
  return fft_inverse(padded) * static_cast<Real>(n);
}

template <class Real>
Real peak_envelope_power(const Codeword<Real>& c, const SamplingGrid& grid) {
  return envelope_samples(c, grid).cwiseAbs2().maxCoeff();
}

template <class Real>
Real pmepr(const Codeword<Real>& c, const SamplingGrid& grid, Real p_av) {
  if (!(p_av > Real(0))) throw std::invalid_argument("p_av must be positive");
  return peak_envelope_power(c, grid) / p_av;
}

// Aperiodic autocorrelation rho(i) = sum_k A_k conj(A_{k+i}), lags 0..K-1.
// rho(K) is 0 by convention and not stored.
template <class Real>
struct AutocorrProfile {
  CVector<Real> rho;

  std::complex<Real> at(Eigen::Index i) const {
    return i == rho.size() ? std::complex<Real>(0, 0) : rho(i);
  }
};

template <class Real>
AutocorrProfile<Real> aperiodic_autocorr(const Codeword<Real>& c) {
  const Eigen::Index K = c.size();
  AutocorrProfile<Real> profile;
  profile.rho.resize(K);
  for (Eigen::Index i = 0; i < K; ++i)
    profile.rho(i) = c.tail(K - i).dot(c.head(K - i));
  return profile;
}

// rho(0) + 2 sum_{i>=1} |rho(i)|; dominates the envelope peak power on any grid.
template <class Real>
Real autocorr_peak_bound(const AutocorrProfile<Real>& profile) {
  const Eigen::Index K = profile.rho.size();
  return profile.rho(0).real() + 2 * profile.rho.tail(K - 1).cwiseAbs().sum();
}

}  // namespace papr
