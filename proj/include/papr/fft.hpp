#pragma once

#include <unsupported/Eigen/FFT>

#include "papr/types.hpp"

namespace papr {

namespace detail {

template <class Real>
Eigen::FFT<Real>& fft_engine() {
  thread_local Eigen::FFT<Real> engine;  // caches plans per length
  return engine;
}

}  // namespace detail

// Unscaled DFT: y_m = sum_n x_n exp(-2 pi j m n / N). Length-1 transforms are
// the identity; the kissfft backend does not accept them.
template <class Real>
CVector<Real> fft_forward(const CVector<Real>& x) {
  if (x.size() <= 1) return x;
  CVector<Real> y(x.size());
  detail::fft_engine<Real>().fwd(y.data(), x.data(), x.size());
  return y;
}

// Scaled inverse: y_n = (1/N) sum_m x_m exp(+2 pi j m n / N).
template <class Real>
CVector<Real> fft_inverse(const CVector<Real>& x) {
  if (x.size() <= 1) return x;
  CVector<Real> y(x.size());
  detail::fft_engine<Real>().inv(y.data(), x.data(), x.size());
  return y;
}

template <class Real>
void fft_forward_cols_inplace(CMatrix<Real>& m) {
  if (m.rows() <= 1) return;
  auto& engine = detail::fft_engine<Real>();
  CVector<Real> tmp(m.rows());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    engine.fwd(tmp.data(), m.col(j).data(), m.rows());
    m.col(j) = tmp;
  }
}

template <class Real>
void fft_inverse_cols_inplace(CMatrix<Real>& m) {
  if (m.rows() <= 1) return;
  auto& engine = detail::fft_engine<Real>();
  CVector<Real> tmp(m.rows());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    engine.inv(tmp.data(), m.col(j).data(), m.rows());
    m.col(j) = tmp;
  }
}

}  // namespace papr
