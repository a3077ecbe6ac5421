#include <doctest.h>

#include <cmath>
#include <complex>

#include "papr/bound.hpp"
#include "papr/ccdf.hpp"
#include "papr/codebook.hpp"
#include "papr/reference.hpp"

using papr::CMatrix;
using papr::Codebook;
using papr::Codeword;

namespace {

Codebook<double> qam_book(Eigen::Index K, Eigen::Index M, Eigen::Index N,
                          std::uint64_t seed) {
  return papr::generate_codebook<double>(papr::ConstellationSpec{}, K, M, N, seed);
}

Codebook<double> single_codeword_book(const Codeword<double>& c, double p_av) {
  Codebook<double> book;
  book.codewords = {c};
  book.partition = {{0}};
  book.p_av = p_av;
  return book;
}

}  // namespace

TEST_CASE("quartic sums of the all-ones codeword are (16, 6)") {
  const auto pair = papr::build_spectral_pair<double>(4);
  const Codeword<double> ones = Codeword<double>::Ones(4);
  const auto sums = papr::quartic_sums(ones, pair);
  CHECK(sums.dft4 == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(sums.odd_dft4 == doctest::Approx(6.0).epsilon(1e-12));

  const auto dense = papr::reference::dense_quartic_sums(ones, pair);
  CHECK(dense.dft4 == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(dense.odd_dft4 == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("spectra preserve the codeword norm") {
  const auto pair = papr::build_spectral_pair<double>(16);
  const auto book = qam_book(16, 5, 1, 3);
  for (const auto& c : book.codewords) {
    CHECK(papr::spectrum(pair, c).squaredNorm() ==
          doctest::Approx(c.squaredNorm()).epsilon(1e-12));
    CHECK(papr::odd_spectrum(pair, c).squaredNorm() ==
          doctest::Approx(c.squaredNorm()).epsilon(1e-12));
  }
}

TEST_CASE("fast quartic path equals the dense projector path") {
  const auto pair = papr::build_spectral_pair<double>(8);
  const auto book = qam_book(8, 10, 1, 7);
  for (const auto& c : book.codewords) {
    const auto fast = papr::quartic_sums(c, pair);
    const auto dense = papr::reference::dense_quartic_sums(c, pair);
    CHECK(fast.dft4 == doctest::Approx(dense.dft4).epsilon(1e-10));
    CHECK(fast.odd_dft4 == doctest::Approx(dense.odd_dft4).epsilon(1e-10));
  }

  const CMatrix<double> w = papr::reference::random_unitary<double>(8, 11);
  for (const auto& c : book.codewords) {
    const auto fast = papr::quartic_sums(c, pair, w);
    const Codeword<double> u = w * c;
    const auto dense = papr::reference::dense_quartic_sums(u, pair);
    CHECK(fast.total() == doctest::Approx(dense.total()).epsilon(1e-10));
  }
}

TEST_CASE("quartic_sums rejects mismatched shapes") {
  const auto pair = papr::build_spectral_pair<double>(4);
  const Codeword<double> c = Codeword<double>::Ones(5);
  CHECK_THROWS_AS(papr::quartic_sums(c, pair), std::invalid_argument);
  const CMatrix<double> w = CMatrix<double>::Identity(3, 3);
  const Codeword<double> c4 = Codeword<double>::Ones(4);
  CHECK_THROWS_AS(papr::quartic_sums(c4, pair, w), std::invalid_argument);
}

TEST_CASE("codeword PAPR bound") {
  const auto pair = papr::build_spectral_pair<double>(4);
  const Codeword<double> ones = Codeword<double>::Ones(4);
  CHECK(papr::codeword_papr_bound(ones, pair, 4.0) ==
        doctest::Approx(std::sqrt(19.25)).epsilon(1e-12));
  CHECK_THROWS_AS(papr::codeword_papr_bound(ones, pair, 0.0), std::invalid_argument);

  const auto pair1 = papr::build_spectral_pair<double>(1);
  Codeword<double> single(1);
  single(0) = std::complex<double>(0.3, 1.4);
  const double p = std::norm(single(0));
  CHECK(papr::codeword_papr_bound(single, pair1, p) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("PAPR bound dominates the measured PMEPR") {
  const auto pair = papr::build_spectral_pair<double>(32);
  const auto book = qam_book(32, 200, 1, 13);
  const papr::SamplingGrid grid(16, 32);
  for (const auto& c : book.codewords) {
    const double bound = papr::codeword_papr_bound(c, pair, book.p_av);
    CHECK(papr::pmepr(c, grid, book.p_av) <= bound * (1 + 1e-12));
  }
}

TEST_CASE("expansion identity evaluates to 308 for the all-ones codeword") {
  const auto pair = papr::build_spectral_pair<double>(4);
  const Codeword<double> ones = Codeword<double>::Ones(4);
  CHECK(papr::expansion_identity_check(ones, pair) < 1e-12);

  const auto profile = papr::aperiodic_autocorr(ones);
  const double rho_form =
      7.0 * (std::norm(profile.rho(0)) + 2 * profile.rho.tail(3).cwiseAbs2().sum());
  CHECK(rho_form == doctest::Approx(308.0).epsilon(1e-12));
  const double quartic_form = 4.0 * 7.0 / 2.0 * papr::quartic_sums(ones, pair).total();
  CHECK(quartic_form == doctest::Approx(308.0).epsilon(1e-12));
}

TEST_CASE("expansion identity: zero codeword and random codewords") {
  const auto pair = papr::build_spectral_pair<double>(64);
  CHECK(papr::expansion_identity_check(Codeword<double>::Zero(64).eval(), pair) ==
        0.0);
  const auto book = qam_book(64, 20, 1, 17);
  for (const auto& c : book.codewords)
    CHECK(papr::expansion_identity_check(c, pair) < 1e-9);
}

TEST_CASE("ccdf upper bound for a single all-ones codeword") {
  const auto pair = papr::build_spectral_pair<double>(4);
  const auto book = single_codeword_book(Codeword<double>::Ones(4), 4.0);
  const auto report = papr::ccdf_upper_bound<double>(book, pair, nullptr, 10.0);
  CHECK(report.upper == doctest::Approx(0.1925).epsilon(1e-12));
  CHECK(report.lower == doctest::Approx(0.07).epsilon(1e-12));
  CHECK(report.lower <= report.upper);
  CHECK(report.quartic_total == doctest::Approx(22.0).epsilon(1e-12));

  // equals codeword_papr_bound^2 / gamma^2
  const double papr_bound = papr::codeword_papr_bound(book.codewords[0], pair, 4.0);
  CHECK(report.upper ==
        doctest::Approx(papr_bound * papr_bound / 100.0).epsilon(1e-12));
}

TEST_CASE("upper bound scales exactly as 1/gamma^2") {
  const auto pair = papr::build_spectral_pair<double>(8);
  const auto book = qam_book(8, 40, 4, 19);
  const auto at1 = papr::ccdf_upper_bound<double>(book, pair, nullptr, 5.0);
  const auto at2 = papr::ccdf_upper_bound<double>(book, pair, nullptr, 10.0);
  CHECK(at2.upper == doctest::Approx(at1.upper / 4.0).epsilon(1e-14));
  CHECK(at2.lower == doctest::Approx(at1.lower / 4.0).epsilon(1e-14));
}

TEST_CASE("ccdf_upper_bound rejections") {
  const auto pair = papr::build_spectral_pair<double>(8);
  const auto book = qam_book(8, 40, 4, 19);
  CHECK_THROWS_AS(papr::ccdf_upper_bound<double>(book, pair, nullptr, 0.0),
                  std::invalid_argument);
  const auto wrong = papr::identity_ensemble<double>(3, 8);
  CHECK_THROWS_AS(papr::ccdf_upper_bound<double>(book, pair, &wrong, 2.0),
                  std::invalid_argument);
}

TEST_CASE("identity ensemble reproduces the plain quartic total") {
  const auto pair = papr::build_spectral_pair<double>(8);
  const auto book = qam_book(8, 40, 4, 23);
  const auto identity = papr::identity_ensemble<double>(4, 8);
  CHECK(papr::quartic_total(book, pair, &identity) ==
        papr::quartic_total(book, pair));
}

TEST_CASE("quartic total respects the unitary-invariant floor") {
  const auto pair = papr::build_spectral_pair<double>(16);
  const auto book = qam_book(16, 60, 4, 29);
  const double floor = papr::quartic_floor(book);
  CHECK(papr::quartic_total(book, pair) >= floor * (1 - 1e-12));
  papr::UnitaryEnsemble<double> random;
  for (std::uint64_t n = 0; n < 4; ++n)
    random.matrices.push_back(papr::reference::random_unitary<double>(16, 31 + n));
  CHECK(papr::quartic_total(book, pair, &random) >= floor * (1 - 1e-12));
}

TEST_CASE("sample second moment basics") {
  const auto book = qam_book(8, 12, 12, 37);  // one codeword per subset
  const auto g = papr::sample_second_moment(book, 3);
  const auto& c = book.codewords[3];
  CHECK((g - (c * c.adjoint())).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(g.trace().real() ==
        doctest::Approx(papr::codeword_power(c)).epsilon(1e-12));
  CHECK_THROWS_AS(papr::sample_second_moment(book, 12), std::out_of_range);
}

TEST_CASE("sample second moment approaches the identity for large subsets") {
  const auto book = qam_book(8, 5000, 1, 41);
  const auto g = papr::sample_second_moment(book, 0);
  CHECK((g - CMatrix<double>::Identity(8, 8)).cwiseAbs().maxCoeff() < 0.1);
  double mean_power = 0;
  for (const auto& c : book.codewords) mean_power += papr::codeword_power(c);
  mean_power /= 5000.0;
  CHECK(g.trace().real() == doctest::Approx(mean_power).epsilon(1e-12));
}

TEST_CASE("the floor is unitary-invariant when the second moment is the identity") {
  // K codewords sqrt(K) e_i give g = I exactly; rotating them by any unitary
  // must leave the sample-moment floor unchanged.
  const Eigen::Index K = 8;
  Codebook<double> book;
  for (Eigen::Index i = 0; i < K; ++i) {
    Codeword<double> c = Codeword<double>::Zero(K);
    c(i) = std::sqrt(static_cast<double>(K));
    book.codewords.push_back(c);
    book.partition.push_back({});
  }
  book.partition.clear();
  book.partition.push_back({0, 1, 2, 3, 4, 5, 6, 7});
  book.p_av = papr::mean_codeword_power(book.codewords);
  const auto pair = papr::build_spectral_pair<double>(K);
  CHECK((papr::sample_second_moment(book, 0) - CMatrix<double>::Identity(K, K))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  const double gamma = 4.0;
  const double plain = papr::sample_moment_floor<double>(book, pair, nullptr, gamma);
  const auto report = papr::ccdf_upper_bound<double>(book, pair, nullptr, gamma);
  CHECK(plain == doctest::Approx(report.lower).epsilon(1e-12));
  for (std::uint64_t s = 0; s < 3; ++s) {
    papr::UnitaryEnsemble<double> rotated;
    rotated.matrices.push_back(papr::reference::random_unitary<double>(K, 400 + s));
    const double value =
        papr::sample_moment_floor<double>(book, pair, &rotated, gamma);
    CHECK(value == doctest::Approx(plain).epsilon(1e-12));
  }
}

TEST_CASE("sample-moment floor never exceeds the upper bound") {
  const auto pair = papr::build_spectral_pair<double>(8);
  const auto book = qam_book(8, 200, 4, 43);
  for (double gamma : {2.0, 6.0, 12.0}) {
    const auto report = papr::ccdf_upper_bound<double>(book, pair, nullptr, gamma);
    const double floor = papr::sample_moment_floor<double>(book, pair, nullptr, gamma);
    CHECK(floor <= report.upper * (1 + 1e-12));
  }
  papr::UnitaryEnsemble<double> random;
  for (std::uint64_t n = 0; n < 4; ++n)
    random.matrices.push_back(papr::reference::random_unitary<double>(8, 47 + n));
  const auto report = papr::ccdf_upper_bound<double>(book, pair, &random, 4.0);
  const double floor = papr::sample_moment_floor<double>(book, pair, &random, 4.0);
  CHECK(floor <= report.upper * (1 + 1e-12));
}
