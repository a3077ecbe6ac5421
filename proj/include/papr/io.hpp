#pragma once

// Plain-text artifact formats. Reals are written with shortest round-trip
// formatting, so reading a file back reproduces the exact doubles and repeated
// runs produce byte-identical files.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "papr/bound.hpp"
#include "papr/ccdf.hpp"
#include "papr/codebook.hpp"
#include "papr/ensemble.hpp"
#include "papr/optimizer.hpp"

namespace papr::io {

template <class Real>
std::string format_real(Real v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), static_cast<double>(v));
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

inline std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  return in;
}

inline std::string expect_line(std::istream& in, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("unexpected end of file: " + path.string());
  return line;
}

template <class T>
T parse_field(const std::string& line, const std::string& key,
              const std::filesystem::path& path) {
  std::istringstream ss(line);
  std::string name;
  T value;
  if (!(ss >> name >> value) || name != key)
    throw std::runtime_error("expected '" + key + " <value>' in " + path.string());
  return value;
}

template <class Real>
void write_complex_row(std::ostream& out,
                       const Eigen::Ref<const CVector<Real>>& row) {
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    if (i) out << ' ';
    out << format_real(row(i).real()) << ' ' << format_real(row(i).imag());
  }
  out << '\n';
}

template <class Real>
CVector<Real> read_complex_row(std::istream& in, Eigen::Index size,
                               const std::filesystem::path& path) {
  std::istringstream ss(expect_line(in, path));
  CVector<Real> row(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    Real re, im;
    if (!(ss >> re >> im))
      throw std::runtime_error("malformed complex row in " + path.string());
    row(i) = std::complex<Real>(re, im);
  }
  return row;
}

}  // namespace detail

// Columnar codebook: header (K, M, N, constellation, seed, p_av), then M rows
// of K interleaved re/im pairs. The partition is the block partition implied
// by N.
template <class Real>
void write_codebook(const std::filesystem::path& path, const Codebook<Real>& book) {
  auto out = detail::open_out(path);
  out << "# paprbound codebook v1\n";
  out << "K " << book.symbol_count() << '\n';
  out << "M " << book.size() << '\n';
  out << "N " << book.subset_count() << '\n';
  out << "constellation " << to_string(book.constellation.kind) << '\n';
  out << "normalized " << (book.constellation.normalized ? 1 : 0) << '\n';
  out << "seed " << book.seed << '\n';
  out << "p_av " << format_real(book.p_av) << '\n';
  for (const auto& c : book.codewords) detail::write_complex_row<Real>(out, c);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

template <class Real>
Codebook<Real> read_codebook(const std::filesystem::path& path) {
  auto in = detail::open_in(path);
  detail::expect_line(in, path);  // banner
  const auto K = detail::parse_field<Eigen::Index>(detail::expect_line(in, path), "K", path);
  const auto M = detail::parse_field<Eigen::Index>(detail::expect_line(in, path), "M", path);
  const auto N = detail::parse_field<Eigen::Index>(detail::expect_line(in, path), "N", path);
  const auto constellation = detail::parse_field<std::string>(
      detail::expect_line(in, path), "constellation", path);
  const auto normalized =
      detail::parse_field<int>(detail::expect_line(in, path), "normalized", path);
  const auto seed = detail::parse_field<std::uint64_t>(detail::expect_line(in, path),
                                                       "seed", path);
  const auto p_av =
      detail::parse_field<Real>(detail::expect_line(in, path), "p_av", path);
  if (K < 1 || M < 1 || N < 1 || N > M || M % N != 0)
    throw std::runtime_error("invalid codebook header: " + path.string());

  Codebook<Real> book;
  book.constellation.kind = constellation_from_string(constellation);
  book.constellation.normalized = normalized != 0;
  book.seed = seed;
  book.p_av = p_av;
  book.codewords.resize(static_cast<std::size_t>(M));
  for (Eigen::Index i = 0; i < M; ++i)
    book.codewords[static_cast<std::size_t>(i)] =
        detail::read_complex_row<Real>(in, K, path);

  const Eigen::Index block = M / N;
  book.partition.resize(static_cast<std::size_t>(N));
  for (Eigen::Index n = 0; n < N; ++n) {
    auto& subset = book.partition[static_cast<std::size_t>(n)];
    subset.resize(static_cast<std::size_t>(block));
    for (Eigen::Index j = 0; j < block; ++j)
      subset[static_cast<std::size_t>(j)] = n * block + j;
  }
  validate(book);
  return book;
}

// Per-matrix blocks with an (n, K) header and row-major complex entries.
template <class Real>
void write_ensemble(const std::filesystem::path& path,
                    const UnitaryEnsemble<Real>& ensemble) {
  auto out = detail::open_out(path);
  const Eigen::Index K = ensemble.matrices.empty() ? 0 : ensemble.matrices.front().rows();
  out << "# paprbound ensemble v1\n";
  out << "N " << ensemble.size() << '\n';
  out << "K " << K << '\n';
  for (Eigen::Index n = 0; n < ensemble.size(); ++n) {
    out << "matrix " << n << '\n';
    const auto& w = ensemble.matrices[static_cast<std::size_t>(n)];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      const CVector<Real> row = w.row(r).transpose();
      detail::write_complex_row<Real>(out, row);
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

template <class Real>
UnitaryEnsemble<Real> read_ensemble(const std::filesystem::path& path) {
  auto in = detail::open_in(path);
  detail::expect_line(in, path);  // banner
  const auto N = detail::parse_field<Eigen::Index>(detail::expect_line(in, path), "N", path);
  const auto K = detail::parse_field<Eigen::Index>(detail::expect_line(in, path), "K", path);
  if (N < 0 || K < 1) throw std::runtime_error("invalid ensemble header: " + path.string());
  UnitaryEnsemble<Real> ensemble;
  ensemble.matrices.resize(static_cast<std::size_t>(N));
  for (Eigen::Index n = 0; n < N; ++n) {
    const auto index =
        detail::parse_field<Eigen::Index>(detail::expect_line(in, path), "matrix", path);
    if (index != n)
      throw std::runtime_error("ensemble blocks out of order: " + path.string());
    CMatrix<Real>& w = ensemble.matrices[static_cast<std::size_t>(n)];
    w.resize(K, K);
    for (Eigen::Index r = 0; r < K; ++r)
      w.row(r) = detail::read_complex_row<Real>(in, K, path).transpose();
  }
  return ensemble;
}

template <class Real>
void write_trace(const std::filesystem::path& path, const OptimizerTrace<Real>& trace) {
  auto out = detail::open_out(path);
  out << "# iter f max_unitarity_err max_dW\n";
  for (const auto& entry : trace.entries)
    out << entry.iter << ' ' << format_real(entry.objective) << ' '
        << format_real(entry.max_unitarity_err) << ' '
        << format_real(entry.max_step_norm) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// gamma is emitted in linear scale and dB (10 log10).
template <class Real>
void write_ccdf_curve(const std::filesystem::path& path, const CcdfCurve<Real>& curve) {
  auto out = detail::open_out(path);
  out << "# ccdf iteration " << curve.iteration << '\n';
  out << "# gamma gamma_db probability\n";
  for (std::size_t i = 0; i < curve.gamma.size(); ++i)
    out << format_real(curve.gamma[i]) << ' '
        << format_real(Real(10) * std::log10(curve.gamma[i])) << ' '
        << format_real(curve.probability[i]) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

template <class Real>
void write_bound_sweep(const std::filesystem::path& path,
                       const std::vector<BoundReport<Real>>& reports) {
  auto out = detail::open_out(path);
  out << "# gamma upper lower quartic_total\n";
  for (const auto& r : reports)
    out << format_real(r.gamma) << ' ' << format_real(r.upper) << ' '
        << format_real(r.lower) << ' ' << format_real(r.quartic_total) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace papr::io
