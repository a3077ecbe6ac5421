#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "papr/fft.hpp"
#include "papr/types.hpp"

namespace papr {

// Unitary transforms diagonalizing the cyclic and negacyclic shift families
// (all indices 0-based):
//
//   shift_matrix(K, k)            == dft.adjoint() * diag(shift_phases row k) * dft
//   negacyclic_shift_matrix(K, k) == odd_dft.adjoint() * diag(odd_shift_phases row k) * odd_dft
//
// odd_dft is the DFT with a half-bin frequency offset; it equals
// dft * diag(half_twist).
template <class Real>
struct SpectralPair {
  Eigen::Index K = 0;
  CMatrix<Real> dft;               // (m,n) = exp(-2 pi j m n / K) / sqrt(K)
  CMatrix<Real> odd_dft;           // (m,n) = exp(-2 pi j n (m/K + 1/(2K))) / sqrt(K)
  CMatrix<Real> shift_phases;      // (k,n) = exp(-2 pi j k n / K)
  CMatrix<Real> odd_shift_phases;  // (k,n) = exp(-2 pi j k (n/K + 1/(2K)))
  CVector<Real> half_twist;        // n -> exp(-pi j n / K)
};

template <class Real>
SpectralPair<Real> build_spectral_pair(Eigen::Index K) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  SpectralPair<Real> pair;
  pair.K = K;
  pair.dft.resize(K, K);
  pair.odd_dft.resize(K, K);
  pair.shift_phases.resize(K, K);
  pair.odd_shift_phases.resize(K, K);
  pair.half_twist.resize(K);

  const Real scale = Real(1) / std::sqrt(static_cast<Real>(K));
  const Real base = -2 * std::numbers::pi_v<Real> / static_cast<Real>(K);
  for (Eigen::Index n = 0; n < K; ++n)
    pair.half_twist(n) = std::polar(Real(1), base * static_cast<Real>(n) / 2);
  for (Eigen::Index m = 0; m < K; ++m) {
    for (Eigen::Index n = 0; n < K; ++n) {
      const Real cycles = base * static_cast<Real>(m) * static_cast<Real>(n);
      const Real offset = base * static_cast<Real>(n) / 2;
      pair.dft(m, n) = scale * std::polar(Real(1), cycles);
      pair.odd_dft(m, n) = scale * std::polar(Real(1), cycles + offset);
      pair.shift_phases(m, n) = std::polar(Real(1), cycles);
      pair.odd_shift_phases(m, n) =
          std::polar(Real(1), cycles + base * static_cast<Real>(m) / 2);
    }
  }
  return pair;
}

// Block matrix [[0, I_k], [I_{K-k}, 0]]; cyclic shift as a permutation.
template <class Real>
CMatrix<Real> shift_matrix(Eigen::Index K, Eigen::Index k) {
  if (k < 0 || k >= K) throw std::out_of_range("shift index out of range");
  CMatrix<Real> b = CMatrix<Real>::Zero(K, K);
  for (Eigen::Index p = 0; p < K; ++p)
    b(p, (p - k + K) % K) = std::complex<Real>(1, 0);
  return b;
}

// Block matrix [[0, -I_k], [I_{K-k}, 0]]; negacyclic shift.
template <class Real>
CMatrix<Real> negacyclic_shift_matrix(Eigen::Index K, Eigen::Index k) {
  if (k < 0 || k >= K) throw std::out_of_range("shift index out of range");
  CMatrix<Real> b = CMatrix<Real>::Zero(K, K);
  for (Eigen::Index p = 0; p < K; ++p)
    b(p, (p - k + K) % K) = std::complex<Real>(p < k ? -1 : 1, 0);
  return b;
}

// --- fast transform application, O(K log K) per vector ---

template <class Real>
CVector<Real> spectrum(const SpectralPair<Real>& pair, const CVector<Real>& x) {
  return fft_forward(x) / std::sqrt(static_cast<Real>(pair.K));
}

template <class Real>
CVector<Real> odd_spectrum(const SpectralPair<Real>& pair, const CVector<Real>& x) {
  CVector<Real> twisted = pair.half_twist.cwiseProduct(x);
  return fft_forward(twisted) / std::sqrt(static_cast<Real>(pair.K));
}

template <class Real>
CVector<Real> adjoint_spectrum(const SpectralPair<Real>& pair, const CVector<Real>& y) {
  return fft_inverse(y) * std::sqrt(static_cast<Real>(pair.K));
}

template <class Real>
CVector<Real> adjoint_odd_spectrum(const SpectralPair<Real>& pair,
                                   const CVector<Real>& y) {
  CVector<Real> z = fft_inverse(y) * std::sqrt(static_cast<Real>(pair.K));
  return pair.half_twist.conjugate().cwiseProduct(z);
}

template <class Real>
void spectrum_cols_inplace(const SpectralPair<Real>& pair, CMatrix<Real>& m) {
  fft_forward_cols_inplace(m);
  m *= std::complex<Real>(Real(1) / std::sqrt(static_cast<Real>(pair.K)), 0);
}

template <class Real>
void odd_spectrum_cols_inplace(const SpectralPair<Real>& pair, CMatrix<Real>& m) {
  m = pair.half_twist.asDiagonal() * m;
  spectrum_cols_inplace(pair, m);
}

template <class Real>
void adjoint_spectrum_cols_inplace(const SpectralPair<Real>& pair, CMatrix<Real>& m) {
  fft_inverse_cols_inplace(m);
  m *= std::complex<Real>(std::sqrt(static_cast<Real>(pair.K)), 0);
}

template <class Real>
void adjoint_odd_spectrum_cols_inplace(const SpectralPair<Real>& pair,
                                       CMatrix<Real>& m) {
  adjoint_spectrum_cols_inplace(pair, m);
  m = pair.half_twist.conjugate().asDiagonal() * m;
}

// ||M M* - I||_max
template <class Real>
Real unitarity_error(const CMatrix<Real>& m) {
  CMatrix<Real> gram = m * m.adjoint();
  gram.diagonal().array() -= std::complex<Real>(1, 0);
  return gram.cwiseAbs().maxCoeff();
}

// Worst max-abs reconstruction error over both shift families and all k.
template <class Real>
Real spectral_reconstruction_error(const SpectralPair<Real>& pair) {
  const Eigen::Index K = pair.K;
  Real worst = 0;
  for (Eigen::Index k = 0; k < K; ++k) {
    const CMatrix<Real> cyclic =
        pair.dft.adjoint() * pair.shift_phases.row(k).asDiagonal() * pair.dft;
    const CMatrix<Real> negacyclic = pair.odd_dft.adjoint() *
                                     pair.odd_shift_phases.row(k).asDiagonal() *
                                     pair.odd_dft;
    worst = std::max(worst,
                     (cyclic - shift_matrix<Real>(K, k)).cwiseAbs().maxCoeff());
    worst = std::max(
        worst, (negacyclic - negacyclic_shift_matrix<Real>(K, k)).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace papr
