#pragma once

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "papr/bound.hpp"
#include "papr/codebook.hpp"
#include "papr/ensemble.hpp"
#include "papr/spectral.hpp"
#include "papr/types.hpp"

namespace papr {

enum class Projection { gram_schmidt, symmetric };

inline const char* to_string(Projection p) {
  return p == Projection::gram_schmidt ? "gram-schmidt" : "symmetric";
}

inline Projection projection_from_string(const std::string& name) {
  if (name == "gram-schmidt" || name == "gram_schmidt") return Projection::gram_schmidt;
  if (name == "symmetric") return Projection::symmetric;
  throw std::invalid_argument("unknown projection: " + name);
}

class projection_error : public std::runtime_error {
 public:
  projection_error(const std::string& what, Eigen::Index subset = -1,
                   int iteration = -1)
      : std::runtime_error(annotate(what, subset, iteration)),
        subset_(subset),
        iteration_(iteration) {}

  Eigen::Index subset() const { return subset_; }
  int iteration() const { return iteration_; }

 private:
  static std::string annotate(const std::string& what, Eigen::Index subset,
                              int iteration) {
    if (subset < 0) return what;
    return what + " (subset " + std::to_string(subset) + ", iteration " +
           std::to_string(iteration) + ")";
  }

  Eigen::Index subset_;
  int iteration_;
};

// Default step-size scaling N/M * 1/K^2.
template <class Real>
Real auto_epsilon(Eigen::Index K, Eigen::Index M, Eigen::Index N) {
  return static_cast<Real>(N) / static_cast<Real>(M) /
         (static_cast<Real>(K) * static_cast<Real>(K));
}

template <class Real>
struct OptimizerConfig {
  Real epsilon = 0;
  int max_iters = 100;
  Real stop_tol = Real(1e-6);  // Frobenius norm of the per-iteration update
  Projection projection = Projection::symmetric;
  std::vector<int> snapshot_iters;  // 1-based; iteration 1 is the initial ensemble
};

template <class Real>
struct OptimizerTrace {
  struct Entry {
    int iter = 0;                // completed update step, 1-based
    Real objective = 0;          // f at the ensemble the step started from
    Real max_unitarity_err = 0;  // after projection
    Real max_step_norm = 0;      // max_n ||W_n^(l+1) - W_n^(l)||_F
    double wall_ms = 0;
  };
  std::vector<Entry> entries;
  Real final_objective = 0;
  std::vector<std::pair<int, UnitaryEnsemble<Real>>> snapshots;
};

// f({W_n}) = sum_n sum_{c in C_n} sum_k { (c* W* C_k W c)^2 + (c* W* Chat_k W c)^2 }.
// Shares the evaluation path with the CCDF bound, so the two agree bit for bit.
template <class Real>
Real objective(const UnitaryEnsemble<Real>& ensemble, const Codebook<Real>& book,
               const SpectralPair<Real>& pair) {
  return quartic_total(book, pair, &ensemble);
}

namespace detail {

// Gradient of the subset objective plus the per-codeword quartic totals at W,
// both from one pass over the spectra.
template <class Real>
CMatrix<Real> gradient_with_values(const CMatrix<Real>& w, const CMatrix<Real>& cols,
                                   const SpectralPair<Real>& pair,
                                   std::vector<Real>& values) {
  const CMatrix<Real> u = w * cols;
  CMatrix<Real> a = u;
  spectrum_cols_inplace(pair, a);
  CMatrix<Real> b = u;
  odd_spectrum_cols_inplace(pair, b);
  values = quartic_from_spectra(a, b);

  a = a.cwiseProduct(a.cwiseAbs2());  // |alpha|^2 alpha per entry
  adjoint_spectrum_cols_inplace(pair, a);
  b = b.cwiseProduct(b.cwiseAbs2());
  adjoint_odd_spectrum_cols_inplace(pair, b);
  return Real(4) * (a + b) * cols.adjoint();
}

}  // namespace detail

// The objective restricted to one subset, as a function of W (W need not be
// unitary here).
template <class Real>
Real subset_objective(const CMatrix<Real>& w, const CMatrix<Real>& cols,
                      const SpectralPair<Real>& pair) {
  if (cols.cols() == 0) return 0;
  CMatrix<Real> a = w * cols;
  CMatrix<Real> b = a;
  spectrum_cols_inplace(pair, a);
  odd_spectrum_cols_inplace(pair, b);
  return pairwise_sum(detail::quartic_from_spectra(a, b));
}

// Generalized complex gradient d f / d Re{W} + j d f / d Im{W} of the subset
// objective, computed in the fast form 4 sum_c [V*(|a|^2 a) + Vhat*(|b|^2 b)] c*.
template <class Real>
CMatrix<Real> gradient(const CMatrix<Real>& w, const CMatrix<Real>& codeword_cols,
                       const SpectralPair<Real>& pair) {
  if (w.rows() != pair.K || w.cols() != pair.K)
    throw std::invalid_argument("unitary dimension does not match spectral pair");
  if (codeword_cols.rows() != pair.K)
    throw std::invalid_argument("codeword length does not match spectral pair");
  if (codeword_cols.cols() == 0) return CMatrix<Real>::Zero(pair.K, pair.K);
  std::vector<Real> values;
  return detail::gradient_with_values(w, codeword_cols, pair, values);
}

template <class Real>
CMatrix<Real> gradient(const CMatrix<Real>& w, const std::vector<Codeword<Real>>& subset,
                       const SpectralPair<Real>& pair) {
  CMatrix<Real> cols(pair.K, static_cast<Eigen::Index>(subset.size()));
  for (std::size_t j = 0; j < subset.size(); ++j)
    cols.col(static_cast<Eigen::Index>(j)) = subset[j];
  return gradient(w, cols, pair);
}

template <class Real>
CMatrix<Real> gradient_step(const CMatrix<Real>& w, const CMatrix<Real>& grad,
                            Real epsilon) {
  if (w.rows() != grad.rows() || w.cols() != grad.cols())
    throw std::invalid_argument("gradient shape does not match iterate");
  return w - epsilon * grad;
}

// Row-wise Gram-Schmidt in natural order; the first output row is the
// normalized first input row.
template <class Real>
CMatrix<Real> project_gram_schmidt(const CMatrix<Real>& w) {
  if (w.rows() != w.cols()) throw std::invalid_argument("matrix must be square");
  CMatrix<Real> r = w;
  for (Eigen::Index k = 0; k < r.rows(); ++k) {
    for (Eigen::Index i = 0; i < k; ++i)
      r.row(k) -= r.row(i).dot(r.row(k)) * r.row(i);
    const Real norm = r.row(k).norm();
    if (norm < Real(1e-12))
      throw projection_error("gram-schmidt pivot vanished: near-dependent rows");
    r.row(k) /= norm;
  }
  return r;
}

// (W W*)^{-1/2} W via the eigendecomposition of W W*; the unitary polar factor.
template <class Real>
CMatrix<Real> project_symmetric(const CMatrix<Real>& w) {
  if (w.rows() != w.cols()) throw std::invalid_argument("matrix must be square");
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> eig(w * w.adjoint());
  if (eig.info() != Eigen::Success)
    throw projection_error("eigendecomposition of W W* failed");
  if (eig.eigenvalues().minCoeff() < Real(1e-12))
    throw projection_error("singular iterate: W W* has a near-zero eigenvalue");
  return eig.eigenvectors() *
         eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         eig.eigenvectors().adjoint() * w;
}

template <class Real>
CMatrix<Real> project_unitary(const CMatrix<Real>& w, Projection kind) {
  return kind == Projection::gram_schmidt ? project_gram_schmidt(w)
                                          : project_symmetric(w);
}

// Projected gradient descent over one unitary per subset, starting from the
// identity. Stops when max_n ||W_n^(l+1) - W_n^(l)||_F < stop_tol or after
// max_iters steps. Subsets are independent; processing order does not affect
// the result.
template <class Real>
std::pair<UnitaryEnsemble<Real>, OptimizerTrace<Real>> optimize(
    const Codebook<Real>& book, const SpectralPair<Real>& pair,
    const OptimizerConfig<Real>& config) {
  if (!(config.epsilon > Real(0)))
    throw std::invalid_argument("epsilon must be positive");
  if (config.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(config.stop_tol > Real(0)))
    throw std::invalid_argument("stop_tol must be positive");
  if (book.symbol_count() != pair.K)
    throw std::invalid_argument("codebook symbol count does not match spectral pair");

  const Eigen::Index N = book.subset_count();
  std::vector<CMatrix<Real>> cols(static_cast<std::size_t>(N));
  for (Eigen::Index n = 0; n < N; ++n) cols[static_cast<std::size_t>(n)] = subset_matrix(book, n);

  UnitaryEnsemble<Real> ensemble = identity_ensemble<Real>(N, pair.K);
  OptimizerTrace<Real> trace;
  const auto wants_snapshot = [&](int iter) {
    return std::find(config.snapshot_iters.begin(), config.snapshot_iters.end(),
                     iter) != config.snapshot_iters.end();
  };
  if (wants_snapshot(1)) trace.snapshots.emplace_back(1, ensemble);

  std::vector<Real> per_codeword(static_cast<std::size_t>(book.size()), Real(0));
  std::vector<Real> subset_values;
  for (int iter = 1; iter <= config.max_iters; ++iter) {
    const auto start = std::chrono::steady_clock::now();
    Real max_step_norm = 0;
    Real max_unit_err = 0;
    for (Eigen::Index n = 0; n < N; ++n) {
      const auto& subset = book.partition[static_cast<std::size_t>(n)];
      CMatrix<Real>& w = ensemble.matrices[static_cast<std::size_t>(n)];
      if (subset.empty()) continue;
      const CMatrix<Real> grad = detail::gradient_with_values(
          w, cols[static_cast<std::size_t>(n)], pair, subset_values);
      for (std::size_t j = 0; j < subset.size(); ++j)
        per_codeword[static_cast<std::size_t>(subset[j])] = subset_values[j];
      CMatrix<Real> next;
      try {
        next = project_unitary(gradient_step(w, grad, config.epsilon),
                               config.projection);
      } catch (const projection_error& err) {
        throw projection_error(err.what(), n, iter);
      }
      max_step_norm = std::max(max_step_norm, (next - w).norm());
      max_unit_err = std::max(max_unit_err, unitarity_error(next));
      w = std::move(next);
    }
    const auto stop = std::chrono::steady_clock::now();

    typename OptimizerTrace<Real>::Entry entry;
    entry.iter = iter;
    entry.objective = pairwise_sum(per_codeword);
    entry.max_unitarity_err = max_unit_err;
    entry.max_step_norm = max_step_norm;
    entry.wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    trace.entries.push_back(entry);

    if (wants_snapshot(iter + 1)) trace.snapshots.emplace_back(iter + 1, ensemble);
    if (max_step_norm < config.stop_tol) break;
  }
  trace.final_objective = quartic_total(book, pair, &ensemble);
  return {std::move(ensemble), std::move(trace)};
}

}  // namespace papr
