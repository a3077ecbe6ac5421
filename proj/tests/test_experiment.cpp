#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "papr/ccdf.hpp"
#include "papr/experiment.hpp"
#include "papr/io.hpp"
#include "papr/verify.hpp"

using papr::Codebook;
using papr::Codeword;

namespace {

namespace fs = std::filesystem;

Codebook<double> qam_book(Eigen::Index K, Eigen::Index M, Eigen::Index N,
                          std::uint64_t seed) {
  return papr::generate_codebook<double>(papr::ConstellationSpec{}, K, M, N, seed);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("paprbound_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("empirical ccdf of a point mass") {
  Codebook<double> book;
  book.codewords = {Codeword<double>::Ones(4)};
  book.partition = {{0}};
  book.p_av = 4.0;
  const std::vector<double> gammas = {3.0, 3.9, 4.0, 4.5};
  const auto curve = papr::empirical_ccdf<double>(book, nullptr, 16, gammas);
  CHECK(curve.probability[0] == 1.0);
  CHECK(curve.probability[1] == 1.0);
  CHECK(curve.probability[2] == 0.0);  // PMEPR == 4 exactly, strict exceedance
  CHECK(curve.probability[3] == 0.0);
}

TEST_CASE("identity ensemble and no ensemble give identical curves") {
  const auto book = qam_book(8, 40, 4, 3);
  const auto identity = papr::identity_ensemble<double>(4, 8);
  const auto grid = papr::default_gamma_grid<double>(8);
  const auto bare = papr::empirical_ccdf<double>(book, nullptr, 8, grid);
  const auto with = papr::empirical_ccdf<double>(book, &identity, 8, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(bare.probability[i] == with.probability[i]);
}

TEST_CASE("ccdf curves are nonincreasing and within [0,1]") {
  const auto book = qam_book(16, 300, 4, 7);
  const auto curve = papr::empirical_ccdf<double>(book, nullptr, 16,
                                                  papr::default_gamma_grid<double>(16));
  for (std::size_t i = 0; i < curve.probability.size(); ++i) {
    CHECK(curve.probability[i] >= 0.0);
    CHECK(curve.probability[i] <= 1.0);
    if (i) CHECK(curve.probability[i] <= curve.probability[i - 1]);
  }
}

TEST_CASE("empirical ccdf never exceeds the Markov bound") {
  const auto book = qam_book(16, 500, 5, 11);
  const auto pair = papr::build_spectral_pair<double>(16);
  const auto grid = papr::default_gamma_grid<double>(16);
  const auto curve = papr::empirical_ccdf<double>(book, nullptr, 16, grid);
  const auto reports = papr::bound_sweep<double>(book, pair, nullptr, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(curve.probability[i] <= reports[i].upper + 1e-12);
}

TEST_CASE("Markov bound still dominates after optimization") {
  const auto book = qam_book(16, 200, 10, 31);
  const auto pair = papr::build_spectral_pair<double>(16);
  papr::OptimizerConfig<double> config;
  config.epsilon = papr::auto_epsilon<double>(16, 200, 10);
  config.max_iters = 15;
  const auto [ensemble, trace] = papr::optimize(book, pair, config);
  const auto grid = papr::default_gamma_grid<double>(16);
  const auto curve = papr::empirical_ccdf<double>(book, &ensemble, 16, grid);
  const auto reports = papr::bound_sweep<double>(book, pair, &ensemble, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(curve.probability[i] <= reports[i].upper + 1e-12);
}

TEST_CASE("gamma grid validation") {
  CHECK_THROWS_AS(papr::validate_gamma_grid<double>({}), std::invalid_argument);
  CHECK_THROWS_AS(papr::validate_gamma_grid<double>({-1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(papr::validate_gamma_grid<double>({2.0, 2.0}),
                  std::invalid_argument);
  const auto grid = papr::default_gamma_grid<double>(16);
  CHECK(grid.size() == 40);
  CHECK(grid.front() == 2.0);
  CHECK(grid.back() == 16.0);
  papr::validate_gamma_grid(grid);
}

TEST_CASE("ensemble mismatch is rejected") {
  const auto book = qam_book(8, 40, 4, 13);
  const auto wrong = papr::identity_ensemble<double>(3, 8);
  CHECK_THROWS_AS(papr::empirical_ccdf<double>(book, &wrong, 8,
                                               papr::default_gamma_grid<double>(8)),
                  std::invalid_argument);
}

TEST_CASE("codebook file round trip is exact") {
  TempDir dir("codebook_io");
  const auto book = qam_book(8, 30, 3, 17);
  const fs::path path = dir.path / "book.txt";
  papr::io::write_codebook(path, book);
  const auto loaded = papr::io::read_codebook<double>(path);
  CHECK(loaded.size() == book.size());
  CHECK(loaded.p_av == book.p_av);
  CHECK(loaded.seed == book.seed);
  CHECK(loaded.constellation.kind == book.constellation.kind);
  CHECK(loaded.partition == book.partition);
  for (Eigen::Index i = 0; i < book.size(); ++i)
    CHECK((loaded.codewords[static_cast<std::size_t>(i)].array() ==
           book.codewords[static_cast<std::size_t>(i)].array())
              .all());
}

TEST_CASE("ensemble file round trip is exact") {
  TempDir dir("ensemble_io");
  papr::UnitaryEnsemble<double> ensemble;
  for (std::uint64_t n = 0; n < 3; ++n)
    ensemble.matrices.push_back(papr::reference::random_unitary<double>(6, 19 + n));
  const fs::path path = dir.path / "ensemble.txt";
  papr::io::write_ensemble(path, ensemble);
  const auto loaded = papr::io::read_ensemble<double>(path);
  REQUIRE(loaded.size() == 3);
  for (std::size_t n = 0; n < 3; ++n)
    CHECK((loaded.matrices[n].array() == ensemble.matrices[n].array()).all());
}

TEST_CASE("readers reject malformed files") {
  TempDir dir("bad_io");
  {
    std::ofstream out(dir.path / "truncated.txt", std::ios::binary);
    out << "# paprbound codebook v1\nK 4\nM 3\nN 1\n";
  }
  CHECK_THROWS_AS(papr::io::read_codebook<double>(dir.path / "truncated.txt"),
                  std::runtime_error);
  {
    std::ofstream out(dir.path / "badheader.txt", std::ios::binary);
    out << "# paprbound codebook v1\nM 3\nK 4\n";
  }
  CHECK_THROWS_AS(papr::io::read_codebook<double>(dir.path / "badheader.txt"),
                  std::runtime_error);
  CHECK_THROWS_AS(papr::io::read_ensemble<double>(dir.path / "missing.txt"),
                  std::runtime_error);
}

TEST_CASE("optimization descends under the gram-schmidt projection too") {
  const auto book = qam_book(16, 80, 4, 37);
  const auto pair = papr::build_spectral_pair<double>(16);
  papr::OptimizerConfig<double> config;
  config.epsilon = papr::auto_epsilon<double>(16, 80, 4);
  config.max_iters = 15;
  config.projection = papr::Projection::gram_schmidt;
  const auto [ensemble, trace] = papr::optimize(book, pair, config);
  CHECK(trace.final_objective < trace.entries.front().objective);
  CHECK(papr::max_unitarity_error(ensemble) < 1e-8);
}

TEST_CASE("run_experiment emits the full artifact set deterministically") {
  TempDir dir_a("run_a");
  TempDir dir_b("run_b");
  papr::ExperimentConfig<double> config;
  config.K = 8;
  config.M = 40;
  config.N = 4;
  config.J = 8;
  config.seed = 23;
  config.iterations = 6;
  config.snapshot_iters = {1, 4};
  config.fresh_eval_seed = 99;
  config.output_dir = dir_a.path;
  const auto summary_a = papr::run_experiment(config);
  config.output_dir = dir_b.path;
  const auto summary_b = papr::run_experiment(config);

  CHECK(summary_a.final_objective < summary_a.initial_objective);
  CHECK(summary_a.iterations_run == 6);

  const std::vector<std::string> expected = {
      "codebook.txt",       "bounds_identity.txt", "trace.txt",
      "ensemble_iter1.txt", "ccdf_iter1.txt",      "ensemble_iter4.txt",
      "ccdf_iter4.txt",     "ensemble_final.txt",  "ccdf_final.txt",
      "bounds_final.txt",   "ccdf_fresh_iter1.txt", "ccdf_fresh_final.txt",
      "manifest.json"};
  for (const auto& name : expected) {
    CAPTURE(name);
    REQUIRE(fs::exists(dir_a.path / name));
    REQUIRE(fs::exists(dir_b.path / name));
    if (name != "manifest.json")
      CHECK(slurp(dir_a.path / name) == slurp(dir_b.path / name));
  }
}

TEST_CASE("verify suite passes trivially at K=1") {
  const auto report = papr::verify_suite({1}, {1});
  for (const auto& check : report.checks) {
    CAPTURE(check.name);
    CHECK(check.pass);
  }
}

TEST_CASE("verify suite passes at small K over several seeds") {
  const auto report = papr::verify_suite({4, 8}, {1, 2});
  REQUIRE(!report.checks.empty());
  for (const auto& check : report.checks) {
    CAPTURE(check.name);
    CAPTURE(check.worst);
    CHECK(check.pass);
  }
  CHECK(report.all_pass());
}

TEST_CASE("a corrupted odd transform trips only the eigendecomposition check") {
  auto pair = papr::build_spectral_pair<double>(8);
  pair.odd_dft(3, 5) = -pair.odd_dft(3, 5);  // sign flip

  CHECK_FALSE(papr::check_eigendecomposition(pair).pass);

  const auto book = qam_book(8, 50, 2, 29);
  CHECK(papr::check_expansion_identity(pair, book.codewords).pass);
  CHECK(papr::check_ordering_chain(pair, book.codewords, 8).pass);
  CHECK(papr::check_jensen_floor(book, pair, 4.0).pass);
  CHECK(papr::check_markov_validity(book, pair, 8,
                                    papr::default_gamma_grid<double>(8))
            .pass);
  papr::CMatrix<double> cols = papr::subset_matrix(book, 0).leftCols(3);
  CHECK(papr::check_gradient_finite_difference(
            pair, papr::reference::random_unitary<double>(8, 31), cols, 1e-6)
            .pass);
  CHECK(papr::check_projections<double>(8, 37).pass);
}
