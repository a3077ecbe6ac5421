#pragma once

#include <complex>

#include <Eigen/Dense>

namespace papr {

template <class Real>
using CVector = Eigen::Vector<std::complex<Real>, Eigen::Dynamic>;

template <class Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
using RVector = Eigen::Vector<Real, Eigen::Dynamic>;

// A codeword is the vector of K transmitted symbols.
template <class Real>
using Codeword = CVector<Real>;

}  // namespace papr
