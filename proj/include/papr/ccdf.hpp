#pragma once

#include <stdexcept>
#include <vector>

#include "papr/codebook.hpp"
#include "papr/ensemble.hpp"
#include "papr/signal.hpp"
#include "papr/types.hpp"

namespace papr {

// Empirical exceedance curve Pr(PMEPR > gamma) over a codebook.
template <class Real>
struct CcdfCurve {
  std::vector<Real> gamma;
  std::vector<Real> probability;  // nonincreasing, in [0, 1]
  int iteration = 0;              // snapshot label; 1 is the initial ensemble
};

// 40 points from 2 to K (linear scale) by default.
template <class Real>
std::vector<Real> default_gamma_grid(Eigen::Index K, int points = 40) {
  if (points < 2) throw std::invalid_argument("gamma grid needs >= 2 points");
  const Real lo = Real(2);
  const Real hi = std::max<Real>(static_cast<Real>(K), Real(3));
  std::vector<Real> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<Real>(i) / static_cast<Real>(points - 1);
  return grid;
}

template <class Real>
void validate_gamma_grid(const std::vector<Real>& gammas) {
  if (gammas.empty()) throw std::invalid_argument("gamma grid is empty");
  if (!(gammas.front() > Real(0)))
    throw std::invalid_argument("gamma values must be positive");
  for (std::size_t i = 1; i < gammas.size(); ++i)
    if (!(gammas[i] > gammas[i - 1]))
      throw std::invalid_argument("gamma grid must be strictly increasing");
}

// PMEPR of every codeword at oversampling J, with its subset's unitary applied
// (identity when ensemble is null). Order matches the codebook.
template <class Real>
std::vector<Real> pmepr_values(const Codebook<Real>& book,
                               const UnitaryEnsemble<Real>* ensemble,
                               Eigen::Index J) {
  if (ensemble && ensemble->size() != book.subset_count())
    throw std::invalid_argument("ensemble size does not match partition count");
  const SamplingGrid grid(J, book.symbol_count());
  const std::vector<Eigen::Index> lookup = subset_lookup(book);
  std::vector<Real> values(static_cast<std::size_t>(book.size()));
  for (Eigen::Index i = 0; i < book.size(); ++i) {
    const Codeword<Real>& c = book.codewords[static_cast<std::size_t>(i)];
    if (ensemble) {
      const Codeword<Real> sent =
          ensemble->matrices[static_cast<std::size_t>(lookup[static_cast<std::size_t>(i)])] * c;
      values[static_cast<std::size_t>(i)] = pmepr(sent, grid, book.p_av);
    } else {
      values[static_cast<std::size_t>(i)] = pmepr(c, grid, book.p_av);
    }
  }
  return values;
}

template <class Real>
CcdfCurve<Real> empirical_ccdf(const Codebook<Real>& book,
                               const UnitaryEnsemble<Real>* ensemble, Eigen::Index J,
                               const std::vector<Real>& gammas) {
  validate_gamma_grid(gammas);
  const std::vector<Real> values = pmepr_values(book, ensemble, J);
  CcdfCurve<Real> curve;
  curve.gamma = gammas;
  curve.probability.resize(gammas.size());
  for (std::size_t g = 0; g < gammas.size(); ++g) {
    Eigen::Index count = 0;
    for (Real v : values)
      if (v > gammas[g]) ++count;
    curve.probability[g] =
        static_cast<Real>(count) / static_cast<Real>(book.size());
  }
  return curve;
}

}  // namespace papr
