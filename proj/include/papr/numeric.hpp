#pragma once

#include <vector>

#include "papr/types.hpp"

namespace papr {

// Tree reduction with a fixed association, so a sum over a given range is
// reproducible no matter how callers batch or order the surrounding work.
template <class Real>
Real pairwise_sum(const Real* x, Eigen::Index n) {
  if (n <= 8) {
    Real s = 0;
    for (Eigen::Index i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const Eigen::Index half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

template <class Real>
Real pairwise_sum(const std::vector<Real>& x) {
  return pairwise_sum(x.data(), static_cast<Eigen::Index>(x.size()));
}

template <class Real>
Real pairwise_sum(const RVector<Real>& x) {
  return pairwise_sum(x.data(), x.size());
}

}  // namespace papr
