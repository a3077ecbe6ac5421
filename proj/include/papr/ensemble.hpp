#pragma once

#include <vector>

#include "papr/spectral.hpp"
#include "papr/types.hpp"

namespace papr {

// One unitary matrix per codeword subset.
template <class Real>
struct UnitaryEnsemble {
  std::vector<CMatrix<Real>> matrices;

  Eigen::Index size() const { return static_cast<Eigen::Index>(matrices.size()); }
};

template <class Real>
UnitaryEnsemble<Real> identity_ensemble(Eigen::Index N, Eigen::Index K) {
  UnitaryEnsemble<Real> ensemble;
  ensemble.matrices.assign(static_cast<std::size_t>(N), CMatrix<Real>::Identity(K, K));
  return ensemble;
}

template <class Real>
Real max_unitarity_error(const UnitaryEnsemble<Real>& ensemble) {
  Real worst = 0;
  for (const auto& w : ensemble.matrices)
    worst = std::max(worst, unitarity_error(w));
  return worst;
}

}  // namespace papr
