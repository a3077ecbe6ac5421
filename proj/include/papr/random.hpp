#pragma once

#include <cstdint>

#include "papr/types.hpp"

namespace papr {

// Counter-based generator (splitmix64 stream): draw i is a pure function of
// (seed, i), so any draw is reproducible independent of generation order.
inline std::uint64_t random_word(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Uniform in [0, 1) with 53-bit resolution.
template <class Real>
Real uniform_unit(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<Real>(random_word(seed, counter) >> 11) *
         static_cast<Real>(1.0 / 9007199254740992.0);
}

// Entries uniform on [-1, 1] + [-1, 1]j.
template <class Real>
CMatrix<Real> random_complex_matrix(Eigen::Index rows, Eigen::Index cols,
                                    std::uint64_t seed) {
  CMatrix<Real> m(rows, cols);
  std::uint64_t counter = 0;
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Real re = 2 * uniform_unit<Real>(seed, counter++) - 1;
      const Real im = 2 * uniform_unit<Real>(seed, counter++) - 1;
      m(i, j) = std::complex<Real>(re, im);
    }
  }
  return m;
}

template <class Real>
CVector<Real> random_complex_vector(Eigen::Index size, std::uint64_t seed) {
  return random_complex_matrix<Real>(size, 1, seed);
}

}  // namespace papr
