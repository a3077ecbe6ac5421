#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "papr/codebook.hpp"
#include "papr/ensemble.hpp"
#include "papr/numeric.hpp"
#include "papr/signal.hpp"
#include "papr/spectral.hpp"
#include "papr/types.hpp"

namespace papr {

// Fourth-power sums of the two spectra of a codeword. These equal the sums of
// squared quadratic forms in the rank-one spectral projectors; the projectors
// themselves are never materialized here.
template <class Real>
struct QuarticSums {
  Real dft4 = 0;      // sum_k |(V W c)_k|^4
  Real odd_dft4 = 0;  // sum_k |(Vhat W c)_k|^4

  Real total() const { return dft4 + odd_dft4; }
};

namespace detail {

template <class Real>
Real fourth_power_sum(const CVector<Real>& s) {
  const RVector<Real> q = s.cwiseAbs2().array().square().matrix();
  return pairwise_sum(q);
}

// Per-column quartic totals |A col|^4-sum + |B col|^4-sum for spectra batches.
template <class Real>
std::vector<Real> quartic_from_spectra(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  std::vector<Real> totals(static_cast<std::size_t>(a.cols()));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const RVector<Real> qa = a.col(j).cwiseAbs2().array().square().matrix();
    const RVector<Real> qb = b.col(j).cwiseAbs2().array().square().matrix();
    totals[static_cast<std::size_t>(j)] = pairwise_sum(qa) + pairwise_sum(qb);
  }
  return totals;
}

}  // namespace detail

template <class Real>
QuarticSums<Real> quartic_sums(const Codeword<Real>& c, const SpectralPair<Real>& pair) {
  if (c.size() != pair.K)
    throw std::invalid_argument("codeword length does not match spectral pair");
  QuarticSums<Real> sums;
  sums.dft4 = detail::fourth_power_sum(spectrum(pair, c));
  sums.odd_dft4 = detail::fourth_power_sum(odd_spectrum(pair, c));
  return sums;
}

template <class Real>
QuarticSums<Real> quartic_sums(const Codeword<Real>& c, const SpectralPair<Real>& pair,
                               const CMatrix<Real>& w) {
  if (w.rows() != pair.K || w.cols() != pair.K)
    throw std::invalid_argument("unitary dimension does not match spectral pair");
  if (c.size() != pair.K)
    throw std::invalid_argument("codeword length does not match spectral pair");
  const CVector<Real> u = w * c;
  QuarticSums<Real> sums;
  sums.dft4 = detail::fourth_power_sum(spectrum(pair, u));
  sums.odd_dft4 = detail::fourth_power_sum(odd_spectrum(pair, u));
  return sums;
}

// Per-codeword quartic totals in codebook order, with each subset's unitary
// applied (identity when ensemble is null).
template <class Real>
std::vector<Real> per_codeword_quartics(const Codebook<Real>& book,
                                        const SpectralPair<Real>& pair,
                                        const UnitaryEnsemble<Real>* ensemble) {
  if (ensemble && ensemble->size() != book.subset_count())
    throw std::invalid_argument("ensemble size does not match partition count");
  std::vector<Real> totals(static_cast<std::size_t>(book.size()), Real(0));
  for (Eigen::Index n = 0; n < book.subset_count(); ++n) {
    const auto& subset = book.partition[static_cast<std::size_t>(n)];
    if (subset.empty()) continue;
    CMatrix<Real> cols = subset_matrix(book, n);
    if (ensemble) cols = ensemble->matrices[static_cast<std::size_t>(n)] * cols;
    CMatrix<Real> a = cols;
    spectrum_cols_inplace(pair, a);
    CMatrix<Real> b = cols;
    odd_spectrum_cols_inplace(pair, b);
    const std::vector<Real> subset_totals = detail::quartic_from_spectra(a, b);
    for (std::size_t j = 0; j < subset.size(); ++j)
      totals[static_cast<std::size_t>(subset[j])] = subset_totals[j];
  }
  return totals;
}

// The triple sum over subsets, codewords and spectral bins; reduced pairwise
// in codebook order for a reproducible value.
template <class Real>
Real quartic_total(const Codebook<Real>& book, const SpectralPair<Real>& pair,
                   const UnitaryEnsemble<Real>* ensemble = nullptr) {
  return pairwise_sum(per_codeword_quartics(book, pair, ensemble));
}

// Unitary-invariant floor of the quartic triple sum: sum_c 2 ||c||^4 / K.
template <class Real>
Real quartic_floor(const Codebook<Real>& book) {
  std::vector<Real> v(static_cast<std::size_t>(book.size()));
  for (Eigen::Index i = 0; i < book.size(); ++i) {
    const Real p = codeword_power(book.codewords[static_cast<std::size_t>(i)]);
    v[static_cast<std::size_t>(i)] =
        2 * p * p / static_cast<Real>(book.symbol_count());
  }
  return pairwise_sum(v);
}

// sqrt( K(2K-1) / (2 p_av^2) * (quartic total) ); dominates PMEPR.
template <class Real>
Real codeword_papr_bound(const Codeword<Real>& c, const SpectralPair<Real>& pair,
                         Real p_av) {
  if (!(p_av > Real(0))) throw std::invalid_argument("p_av must be positive");
  const Real k = static_cast<Real>(pair.K);
  const QuarticSums<Real> sums = quartic_sums(c, pair);
  return std::sqrt(k * (2 * k - 1) / (2 * p_av * p_av) * sums.total());
}

// Evaluates the three algebraically equal forms of the squared-peak bound and
// returns their largest relative discrepancy:
//   (2K-1) { |rho(0)|^2 + 2 sum |rho(i)|^2 }
//   (2K-1)/2 sum_k { |rho(k)+conj(rho(K-k))|^2 + |rho(k)-conj(rho(K-k))|^2 }
//   K(2K-1)/2 { sum |alpha_k|^4 + sum |beta_k|^4 }
template <class Real>
Real expansion_identity_check(const Codeword<Real>& c, const SpectralPair<Real>& pair) {
  const Eigen::Index K = pair.K;
  const AutocorrProfile<Real> profile = aperiodic_autocorr(c);
  const Real k = static_cast<Real>(K);

  const Real form_aperiodic =
      (2 * k - 1) * (std::norm(profile.rho(0)) +
                     2 * profile.rho.tail(K - 1).cwiseAbs2().sum());

  Real correlation_terms = 0;
  for (Eigen::Index i = 0; i < K; ++i) {
    const std::complex<Real> fwd = profile.at(i);
    const std::complex<Real> rev = std::conj(profile.at(K - i));
    correlation_terms += std::norm(fwd + rev) + std::norm(fwd - rev);
  }
  const Real form_periodic = (2 * k - 1) / 2 * correlation_terms;

  const QuarticSums<Real> sums = quartic_sums(c, pair);
  const Real form_quartic = k * (2 * k - 1) / 2 * sums.total();

  const Real hi = std::max({form_aperiodic, form_periodic, form_quartic});
  const Real lo = std::min({form_aperiodic, form_periodic, form_quartic});
  if (hi == Real(0)) return 0;
  return (hi - lo) / hi;
}

template <class Real>
struct BoundReport {
  Real gamma = 0;
  Real upper = 0;          // Markov bound on Pr(PMEPR > gamma); may exceed 1
  Real lower = 0;          // K^2 (2K-1) / (p_av^2 gamma^2)
  Real quartic_total = 0;  // the inner triple sum
};

template <class Real>
BoundReport<Real> report_from_total(const Codebook<Real>& book, Eigen::Index K,
                                    Real total, Real gamma) {
  if (!(gamma > Real(0))) throw std::invalid_argument("gamma must be positive");
  const Real k = static_cast<Real>(K);
  const Real p2 = book.p_av * book.p_av;
  const Real g2 = gamma * gamma;
  BoundReport<Real> report;
  report.gamma = gamma;
  report.quartic_total = total;
  report.upper =
      total * k * (2 * k - 1) / (2 * p2 * g2 * static_cast<Real>(book.size()));
  report.lower = k * k * (2 * k - 1) / (p2 * g2);
  return report;
}

template <class Real>
BoundReport<Real> ccdf_upper_bound(const Codebook<Real>& book,
                                   const SpectralPair<Real>& pair,
                                   const UnitaryEnsemble<Real>* ensemble, Real gamma) {
  if (!(gamma > Real(0))) throw std::invalid_argument("gamma must be positive");
  return report_from_total(book, pair.K, quartic_total(book, pair, ensemble), gamma);
}

// One quartic evaluation shared across the whole gamma grid (1/gamma^2 scaling).
template <class Real>
std::vector<BoundReport<Real>> bound_sweep(const Codebook<Real>& book,
                                           const SpectralPair<Real>& pair,
                                           const UnitaryEnsemble<Real>* ensemble,
                                           const std::vector<Real>& gammas) {
  const Real total = quartic_total(book, pair, ensemble);
  std::vector<BoundReport<Real>> reports;
  reports.reserve(gammas.size());
  for (Real gamma : gammas)
    reports.push_back(report_from_total(book, pair.K, total, gamma));
  return reports;
}

// g(C_n) = (1/|C_n|) sum_{c in C_n} c c*
template <class Real>
CMatrix<Real> sample_second_moment(const Codebook<Real>& book, Eigen::Index n) {
  const CMatrix<Real> cols = subset_matrix(book, n);
  if (cols.cols() == 0)
    throw std::invalid_argument("subset is empty");
  return cols * cols.adjoint() / static_cast<Real>(cols.cols());
}

// Jensen floor of the upper bound computed from the subsets' sample second
// moments; equals the lower bound above when every g(C_n) is the identity.
template <class Real>
Real sample_moment_floor(const Codebook<Real>& book, const SpectralPair<Real>& pair,
                         const UnitaryEnsemble<Real>* ensemble, Real gamma) {
  if (!(gamma > Real(0))) throw std::invalid_argument("gamma must be positive");
  if (ensemble && ensemble->size() != book.subset_count())
    throw std::invalid_argument("ensemble size does not match partition count");
  const Real k = static_cast<Real>(pair.K);
  Real weighted = 0;
  for (Eigen::Index n = 0; n < book.subset_count(); ++n) {
    const auto& subset = book.partition[static_cast<std::size_t>(n)];
    if (subset.empty()) continue;
    CMatrix<Real> g = sample_second_moment(book, n);
    if (ensemble) {
      const CMatrix<Real>& w = ensemble->matrices[static_cast<std::size_t>(n)];
      g = w * g * w.adjoint();
    }
    const RVector<Real> diag_dft = (pair.dft * g * pair.dft.adjoint()).diagonal().real();
    const RVector<Real> diag_odd =
        (pair.odd_dft * g * pair.odd_dft.adjoint()).diagonal().real();
    weighted += static_cast<Real>(subset.size()) *
                (diag_dft.array().square().sum() + diag_odd.array().square().sum());
  }
  const Real p2 = book.p_av * book.p_av;
  return weighted * k * (2 * k - 1) /
         (2 * p2 * gamma * gamma * static_cast<Real>(book.size()));
}

}  // namespace papr
