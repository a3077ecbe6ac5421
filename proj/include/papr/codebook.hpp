#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "papr/constellation.hpp"
#include "papr/numeric.hpp"
#include "papr/types.hpp"

namespace papr {

// M codewords of equal length K with a disjoint partition into N subsets.
// p_av is the sample mean of codeword powers over the codebook.
template <class Real>
struct Codebook {
  std::vector<Codeword<Real>> codewords;
  std::vector<std::vector<Eigen::Index>> partition;  // 0-based codeword indices
  Real p_av = 0;

  // provenance, carried for serialization
  ConstellationSpec constellation{};
  std::uint64_t seed = 0;

  Eigen::Index size() const { return static_cast<Eigen::Index>(codewords.size()); }
  Eigen::Index symbol_count() const {
    return codewords.empty() ? 0 : codewords.front().size();
  }
  Eigen::Index subset_count() const {
    return static_cast<Eigen::Index>(partition.size());
  }
};

template <class Derived>
typename Derived::RealScalar codeword_power(const Eigen::MatrixBase<Derived>& c) {
  return c.squaredNorm();
}

template <class Real>
Real mean_codeword_power(const std::vector<Codeword<Real>>& codewords) {
  std::vector<Real> powers(codewords.size());
  for (std::size_t i = 0; i < codewords.size(); ++i)
    powers[i] = codeword_power(codewords[i]);
  return pairwise_sum(powers) / static_cast<Real>(codewords.size());
}

// Throws std::invalid_argument when a codebook invariant is broken.
template <class Real>
void validate(const Codebook<Real>& book) {
  const Eigen::Index m = book.size();
  if (m < 1) throw std::invalid_argument("codebook is empty");
  const Eigen::Index k = book.symbol_count();
  if (k < 1) throw std::invalid_argument("codewords must have length >= 1");
  for (const auto& c : book.codewords) {
    if (c.size() != k)
      throw std::invalid_argument("codewords must all have equal length");
    if (!c.allFinite())
      throw std::invalid_argument("codeword entries must be finite");
  }
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  for (const auto& subset : book.partition) {
    for (Eigen::Index idx : subset) {
      if (idx < 0 || idx >= m)
        throw std::invalid_argument("partition index out of range");
      if (seen[static_cast<std::size_t>(idx)])
        throw std::invalid_argument("partition subsets must be disjoint");
      seen[static_cast<std::size_t>(idx)] = 1;
    }
  }
  for (char s : seen)
    if (!s) throw std::invalid_argument("partition must cover all codewords");
  const bool any_nonzero = std::any_of(
      book.codewords.begin(), book.codewords.end(),
      [](const Codeword<Real>& c) { return c.squaredNorm() > Real(0); });
  if (any_nonzero && !(book.p_av > Real(0)))
    throw std::invalid_argument("p_av must be positive for a nonzero codebook");
}

// M codewords of K i.i.d. symbols, partitioned into N consecutive blocks of
// M/N codewords. Deterministic in (spec, K, M, N, seed); codeword i depends
// only on its own stream positions.
template <class Real>
Codebook<Real> generate_codebook(const ConstellationSpec& spec, Eigen::Index K,
                                 Eigen::Index M, Eigen::Index N,
                                 std::uint64_t seed) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  if (N < 1 || N > M) throw std::invalid_argument("N must satisfy 1 <= N <= M");
  if (M % N != 0)
    throw std::invalid_argument("N must divide M (block partition undefined)");

  const auto points = constellation_points<Real>(spec);
  Codebook<Real> book;
  book.constellation = spec;
  book.seed = seed;
  book.codewords.resize(static_cast<std::size_t>(M));
  for (Eigen::Index i = 0; i < M; ++i) {
    Codeword<Real>& c = book.codewords[static_cast<std::size_t>(i)];
    c.resize(K);
    for (Eigen::Index k = 0; k < K; ++k)
      c(k) = draw_symbol(points, seed, static_cast<std::uint64_t>(i * K + k));
  }

  const Eigen::Index block = M / N;
  book.partition.resize(static_cast<std::size_t>(N));
  for (Eigen::Index n = 0; n < N; ++n) {
    auto& subset = book.partition[static_cast<std::size_t>(n)];
    subset.resize(static_cast<std::size_t>(block));
    for (Eigen::Index j = 0; j < block; ++j) subset[static_cast<std::size_t>(j)] = n * block + j;
  }

  book.p_av = mean_codeword_power(book.codewords);
  return book;
}

// Codewords of subset n as columns of a K x |C_n| matrix.
template <class Real>
CMatrix<Real> subset_matrix(const Codebook<Real>& book, Eigen::Index n) {
  if (n < 0 || n >= book.subset_count())
    throw std::out_of_range("subset index out of range");
  const auto& subset = book.partition[static_cast<std::size_t>(n)];
  CMatrix<Real> cols(book.symbol_count(), static_cast<Eigen::Index>(subset.size()));
  for (std::size_t j = 0; j < subset.size(); ++j)
    cols.col(static_cast<Eigen::Index>(j)) =
        book.codewords[static_cast<std::size_t>(subset[j])];
  return cols;
}

// subset index of each codeword
template <class Real>
std::vector<Eigen::Index> subset_lookup(const Codebook<Real>& book) {
  std::vector<Eigen::Index> lookup(static_cast<std::size_t>(book.size()), -1);
  for (Eigen::Index n = 0; n < book.subset_count(); ++n)
    for (Eigen::Index idx : book.partition[static_cast<std::size_t>(n)])
      lookup[static_cast<std::size_t>(idx)] = n;
  return lookup;
}

}  // namespace papr
