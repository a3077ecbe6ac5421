#pragma once

// Reference implementations used only for verification: dense spectral
// projectors, quadratic-form objectives, the literal gradient formula, central
// finite differences and an SVD polar factor. They deliberately avoid the fast
// transform paths they are used to check.

#include <cstdint>
#include <vector>

#include "papr/bound.hpp"
#include "papr/random.hpp"
#include "papr/signal.hpp"
#include "papr/spectral.hpp"
#include "papr/types.hpp"

namespace papr::reference {

// C_k = V* G_k V; rank one.
template <class Real>
CMatrix<Real> dense_projector(const SpectralPair<Real>& pair, Eigen::Index k) {
  return pair.dft.row(k).adjoint() * pair.dft.row(k);
}

template <class Real>
CMatrix<Real> dense_odd_projector(const SpectralPair<Real>& pair, Eigen::Index k) {
  return pair.odd_dft.row(k).adjoint() * pair.odd_dft.row(k);
}

template <class Real>
QuarticSums<Real> dense_quartic_sums(const Codeword<Real>& c,
                                     const SpectralPair<Real>& pair) {
  QuarticSums<Real> sums;
  for (Eigen::Index k = 0; k < pair.K; ++k) {
    const Real qa = (c.adjoint() * dense_projector(pair, k) * c)(0).real();
    const Real qb = (c.adjoint() * dense_odd_projector(pair, k) * c)(0).real();
    sums.dft4 += qa * qa;
    sums.odd_dft4 += qb * qb;
  }
  return sums;
}

template <class Real>
Real dense_subset_objective(const CMatrix<Real>& w, const CMatrix<Real>& cols,
                            const SpectralPair<Real>& pair) {
  Real f = 0;
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    const Codeword<Real> u = w * cols.col(j);
    f += dense_quartic_sums(u, pair).total();
  }
  return f;
}

// 4 sum_c sum_k { (c* W* C_k W c) C_k + (c* W* Chat_k W c) Chat_k } W c c*
template <class Real>
CMatrix<Real> dense_gradient(const CMatrix<Real>& w, const CMatrix<Real>& cols,
                             const SpectralPair<Real>& pair) {
  const Eigen::Index K = pair.K;
  CMatrix<Real> grad = CMatrix<Real>::Zero(K, K);
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    const Codeword<Real> c = cols.col(j);
    const Codeword<Real> u = w * c;
    CMatrix<Real> weighted = CMatrix<Real>::Zero(K, K);
    for (Eigen::Index k = 0; k < K; ++k) {
      const CMatrix<Real> ck = dense_projector(pair, k);
      const CMatrix<Real> ckh = dense_odd_projector(pair, k);
      weighted += (u.adjoint() * ck * u)(0).real() * ck;
      weighted += (u.adjoint() * ckh * u)(0).real() * ckh;
    }
    grad += Real(4) * weighted * u * c.adjoint();
  }
  return grad;
}

// Central differences of a real objective on the real parametrization:
// entry (i,j) is d f / d Re{W_ij} + j d f / d Im{W_ij}.
template <class Real, class Objective>
CMatrix<Real> finite_difference_gradient(const CMatrix<Real>& w, Real h,
                                         Objective&& f) {
  CMatrix<Real> grad(w.rows(), w.cols());
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      CMatrix<Real> plus = w;
      CMatrix<Real> minus = w;
      plus(i, j) += std::complex<Real>(h, 0);
      minus(i, j) -= std::complex<Real>(h, 0);
      const Real d_re = (f(plus) - f(minus)) / (2 * h);
      plus = w;
      minus = w;
      plus(i, j) += std::complex<Real>(0, h);
      minus(i, j) -= std::complex<Real>(0, h);
      const Real d_im = (f(plus) - f(minus)) / (2 * h);
      grad(i, j) = std::complex<Real>(d_re, d_im);
    }
  }
  return grad;
}

// Unitary polar factor U V* from the SVD of W.
template <class Real>
CMatrix<Real> svd_polar_factor(const CMatrix<Real>& w) {
  Eigen::JacobiSVD<CMatrix<Real>> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

template <class Real>
CMatrix<Real> random_unitary(Eigen::Index K, std::uint64_t seed) {
  return svd_polar_factor(random_complex_matrix<Real>(K, K, seed));
}

// Peak envelope power by direct summation at every grid time.
template <class Real>
Real direct_peak_envelope_power(const Codeword<Real>& c, const SamplingGrid& grid) {
  Real peak = 0;
  for (Eigen::Index i = 0; i < grid.sample_count(); ++i) {
    const std::complex<Real> s = baseband_sample(c, grid.template time<Real>(i));
    peak = std::max(peak, std::norm(s));
  }
  return peak;
}

}  // namespace papr::reference
