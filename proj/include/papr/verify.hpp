#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "papr/bound.hpp"
#include "papr/ccdf.hpp"
#include "papr/codebook.hpp"
#include "papr/optimizer.hpp"
#include "papr/reference.hpp"
#include "papr/spectral.hpp"
#include "papr/types.hpp"

namespace papr {

struct CheckResult {
  std::string name;
  double worst = 0;
  double tolerance = 0;
  bool pass = false;

  static CheckResult make(std::string name, double worst, double tolerance) {
    CheckResult r;
    r.name = std::move(name);
    r.worst = worst;
    r.tolerance = tolerance;
    r.pass = worst <= tolerance;
    return r;
  }
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
  }
};

// Shift-family reconstruction through the stored transforms.
template <class Real>
CheckResult check_eigendecomposition(const SpectralPair<Real>& pair) {
  return CheckResult::make("eigendecomposition identity",
                           static_cast<double>(spectral_reconstruction_error(pair)),
                           1e-10);
}

template <class Real>
CheckResult check_expansion_identity(const SpectralPair<Real>& pair,
                                     const std::vector<Codeword<Real>>& codewords) {
  Real worst = 0;
  for (const auto& c : codewords)
    worst = std::max(worst, expansion_identity_check(c, pair));
  return CheckResult::make("expansion identity", static_cast<double>(worst), 1e-9);
}

// peak <= autocorr bound and (autocorr bound)^2 <= quartic form, reported as
// the worst normalized violation (negative values mean margin).
template <class Real>
CheckResult check_ordering_chain(const SpectralPair<Real>& pair,
                                 const std::vector<Codeword<Real>>& codewords,
                                 Eigen::Index J) {
  Real worst = std::numeric_limits<Real>::lowest();
  const SamplingGrid grid(J, pair.K);
  const Real k = static_cast<Real>(pair.K);
  for (const auto& c : codewords) {
    const Real peak = peak_envelope_power(c, grid);
    const Real acb = autocorr_peak_bound(aperiodic_autocorr(c));
    const Real quartic = k * (2 * k - 1) / 2 * quartic_sums(c, pair).total();
    worst = std::max(worst, (peak - acb) / acb);
    worst = std::max(worst, (acb * acb - quartic) / quartic);
  }
  return CheckResult::make("ordering chain", static_cast<double>(worst), 1e-9);
}

template <class Real>
CheckResult check_jensen_floor(const Codebook<Real>& book,
                               const SpectralPair<Real>& pair, Real gamma) {
  const BoundReport<Real> report = ccdf_upper_bound<Real>(book, pair, nullptr, gamma);
  const Real floor = sample_moment_floor<Real>(book, pair, nullptr, gamma);
  const Real violation = (floor - report.upper) / report.upper;
  return CheckResult::make("jensen floor", static_cast<double>(violation), 1e-9);
}

// Every gradient component against central differences of the objective.
template <class Real>
CheckResult check_gradient_finite_difference(const SpectralPair<Real>& pair,
                                             const CMatrix<Real>& w,
                                             const CMatrix<Real>& cols, Real h) {
  const CMatrix<Real> grad = gradient(w, cols, pair);
  const CMatrix<Real> fd = reference::finite_difference_gradient(
      w, h, [&](const CMatrix<Real>& m) { return subset_objective(m, cols, pair); });
  const Real scale = grad.cwiseAbs().maxCoeff();
  Real worst = 0;
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      const Real denom = std::max(std::abs(grad(i, j)), Real(1e-3) * scale);
      worst = std::max(worst, std::abs(grad(i, j) - fd(i, j)) / denom);
    }
  return CheckResult::make("gradient finite difference", static_cast<double>(worst),
                           1e-5);
}

template <class Real>
CheckResult check_projections(Eigen::Index K, std::uint64_t seed) {
  Real worst = 0;
  const CMatrix<Real> m = random_complex_matrix<Real>(K, K, seed);
  const CMatrix<Real> sym = project_symmetric(m);
  const CMatrix<Real> gs = project_gram_schmidt(m);
  const CMatrix<Real> polar = reference::svd_polar_factor(m);
  worst = std::max(worst, unitarity_error(sym));
  worst = std::max(worst, unitarity_error(gs));
  worst = std::max(worst, (sym - polar).cwiseAbs().maxCoeff());
  const CMatrix<Real> u = reference::random_unitary<Real>(K, seed * 2 + 1);
  worst = std::max(worst, (project_symmetric(u) - u).cwiseAbs().maxCoeff());
  worst = std::max(worst, (project_gram_schmidt(u) - u).cwiseAbs().maxCoeff());
  return CheckResult::make("projection properties", static_cast<double>(worst), 1e-10);
}

// Empirical CCDF never exceeds the Markov bound on the same codebook.
template <class Real>
CheckResult check_markov_validity(const Codebook<Real>& book,
                                  const SpectralPair<Real>& pair, Eigen::Index J,
                                  const std::vector<Real>& gammas) {
  const std::vector<BoundReport<Real>> reports =
      bound_sweep<Real>(book, pair, nullptr, gammas);
  const CcdfCurve<Real> curve = empirical_ccdf<Real>(book, nullptr, J, gammas);
  Real worst = std::numeric_limits<Real>::lowest();
  for (std::size_t i = 0; i < gammas.size(); ++i)
    worst = std::max(worst, curve.probability[i] - reports[i].upper);
  return CheckResult::make("markov validity", static_cast<double>(worst), 1e-12);
}

namespace detail {

template <class Real>
std::vector<Codeword<Real>> sample_codewords(Eigen::Index K, Eigen::Index count,
                                             std::uint64_t seed) {
  const Codebook<Real> book =
      generate_codebook<Real>(ConstellationSpec{}, K, count, 1, seed);
  return book.codewords;
}

inline void merge_check(std::vector<CheckResult>& into, const CheckResult& result) {
  for (auto& existing : into) {
    if (existing.name == result.name) {
      existing.worst = std::max(existing.worst, result.worst);
      existing.pass = existing.pass && result.pass;
      return;
    }
  }
  into.push_back(result);
}

}  // namespace detail

// Runs every module invariant for each K and seed and keeps the worst
// observed value per check. Failures are report entries, never throws.
inline VerifyReport verify_suite(const std::vector<Eigen::Index>& Ks,
                                 const std::vector<std::uint64_t>& seeds) {
  using Real = double;
  VerifyReport report;
  for (Eigen::Index K : Ks) {
    const SpectralPair<Real> pair = build_spectral_pair<Real>(K);
    detail::merge_check(report.checks, check_eigendecomposition(pair));
    for (std::uint64_t seed : seeds) {
      const auto codewords = detail::sample_codewords<Real>(K, 50, seed);
      detail::merge_check(report.checks, check_expansion_identity(pair, codewords));
      detail::merge_check(report.checks, check_ordering_chain(pair, codewords, 16));

      const Eigen::Index m = 200;
      const Eigen::Index n = std::min<Eigen::Index>(4, m);
      const Codebook<Real> book =
          generate_codebook<Real>(ConstellationSpec{}, K, m, n, seed + 17);
      detail::merge_check(report.checks,
                          check_jensen_floor(book, pair, Real(0.5) * std::max<Real>(
                                                             static_cast<Real>(K), 4)));
      detail::merge_check(
          report.checks,
          check_markov_validity(book, pair, 8, default_gamma_grid<Real>(K)));

      CMatrix<Real> cols(K, 3);
      for (Eigen::Index j = 0; j < 3; ++j)
        cols.col(j) = detail::sample_codewords<Real>(K, 1, seed * 31 + 7 + static_cast<std::uint64_t>(j))[0];
      const CMatrix<Real> w =
          reference::random_unitary<Real>(K, seed * 13 + 5);
      detail::merge_check(report.checks, check_gradient_finite_difference(
                                             pair, w, cols, Real(1e-6)));
      detail::merge_check(report.checks, check_projections<Real>(K, seed * 11 + 3));
    }
  }
  return report;
}

}  // namespace papr
