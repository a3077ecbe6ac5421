// Command-line driver: codebook generation, bound sweeps, unitary-ensemble
// optimization, empirical PMEPR CCDF estimation and the invariant suite.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "papr/ccdf.hpp"
#include "papr/codebook.hpp"
#include "papr/experiment.hpp"
#include "papr/io.hpp"
#include "papr/optimizer.hpp"
#include "papr/verify.hpp"
#include "papr/version.hpp"

namespace {

using Real = double;

struct GammaOptions {
  double min = 2.0;
  double max = 0.0;  // 0 selects K
  int points = 40;
};

void add_gamma_options(CLI::App* cmd, GammaOptions& gamma) {
  cmd->add_option("--gamma-min", gamma.min, "Smallest gamma in the sweep");
  cmd->add_option("--gamma-max", gamma.max, "Largest gamma (default: K)");
  cmd->add_option("--gamma-points", gamma.points, "Number of gamma values");
}

std::vector<Real> make_gamma_grid(const GammaOptions& gamma, Eigen::Index K) {
  const Real hi = gamma.max > 0 ? gamma.max
                                : std::max<Real>(static_cast<Real>(K), 3.0);
  if (gamma.points < 2) throw std::invalid_argument("gamma grid needs >= 2 points");
  std::vector<Real> grid(static_cast<std::size_t>(gamma.points));
  for (int i = 0; i < gamma.points; ++i)
    grid[static_cast<std::size_t>(i)] =
        gamma.min + (hi - gamma.min) * static_cast<Real>(i) /
                        static_cast<Real>(gamma.points - 1);
  papr::validate_gamma_grid(grid);
  return grid;
}

papr::Projection parse_projection(const std::string& name) {
  return papr::projection_from_string(name);
}

Real parse_epsilon(const std::string& text, Eigen::Index K, Eigen::Index M,
                   Eigen::Index N) {
  if (text == "auto") return papr::auto_epsilon<Real>(K, M, N);
  const Real value = std::stod(text);
  if (!(value > 0)) throw std::invalid_argument("epsilon must be positive");
  return value;
}

int run_generate(Eigen::Index K, Eigen::Index M, Eigen::Index N,
                 const std::string& constellation, bool unnormalized,
                 std::uint64_t seed, const std::string& out) {
  papr::ConstellationSpec spec;
  spec.kind = papr::constellation_from_string(constellation);
  spec.normalized = !unnormalized;
  const auto book = papr::generate_codebook<Real>(spec, K, M, N, seed);
  papr::io::write_codebook(out, book);
  std::cout << "wrote " << out << " (K=" << K << " M=" << M << " N=" << N
            << " p_av=" << book.p_av << ")\n";
  return 0;
}

int run_bound(const std::string& codebook, const std::string& ensemble_path,
              const GammaOptions& gamma, const std::string& out) {
  const auto book = papr::io::read_codebook<Real>(codebook);
  const auto pair = papr::build_spectral_pair<Real>(book.symbol_count());
  std::optional<papr::UnitaryEnsemble<Real>> ensemble;
  if (!ensemble_path.empty())
    ensemble = papr::io::read_ensemble<Real>(ensemble_path);
  const auto reports = papr::bound_sweep<Real>(
      book, pair, ensemble ? &*ensemble : nullptr,
      make_gamma_grid(gamma, book.symbol_count()));
  papr::io::write_bound_sweep(out, reports);
  std::cout << "wrote " << out << " (" << reports.size() << " gamma values)\n";
  return 0;
}

int run_optimize(const std::string& codebook, const std::string& epsilon,
                 int iterations, Real stop_tol, const std::string& projection,
                 std::vector<int> snapshots, const std::string& out_dir) {
  const auto book = papr::io::read_codebook<Real>(codebook);
  const auto pair = papr::build_spectral_pair<Real>(book.symbol_count());
  papr::OptimizerConfig<Real> config;
  config.epsilon =
      parse_epsilon(epsilon, book.symbol_count(), book.size(), book.subset_count());
  config.max_iters = iterations;
  config.stop_tol = stop_tol;
  config.projection = parse_projection(projection);
  config.snapshot_iters = std::move(snapshots);
  const auto [ensemble, trace] = papr::optimize(book, pair, config);

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  papr::io::write_trace(dir / "trace.txt", trace);
  for (const auto& [iter, snapshot] : trace.snapshots)
    papr::io::write_ensemble(dir / ("ensemble_iter" + std::to_string(iter) + ".txt"),
                             snapshot);
  papr::io::write_ensemble(dir / "ensemble_final.txt", ensemble);
  std::cout << "optimize: f " << trace.entries.front().objective << " -> "
            << trace.final_objective << " in " << trace.entries.size()
            << " iterations (epsilon=" << config.epsilon << ")\n";
  return 0;
}

int run_ccdf(const std::string& codebook, const std::string& ensemble_path,
             Eigen::Index J, const GammaOptions& gamma, int iteration,
             const std::string& out) {
  const auto book = papr::io::read_codebook<Real>(codebook);
  std::optional<papr::UnitaryEnsemble<Real>> ensemble;
  if (!ensemble_path.empty())
    ensemble = papr::io::read_ensemble<Real>(ensemble_path);
  auto curve = papr::empirical_ccdf<Real>(book, ensemble ? &*ensemble : nullptr, J,
                                          make_gamma_grid(gamma, book.symbol_count()));
  curve.iteration = iteration;
  papr::io::write_ccdf_curve(out, curve);
  std::cout << "wrote " << out << '\n';
  return 0;
}

int run_verify(const std::vector<Eigen::Index>& Ks,
               const std::vector<std::uint64_t>& seeds) {
  const papr::VerifyReport report = papr::verify_suite(Ks, seeds);
  for (const auto& check : report.checks)
    std::cout << (check.pass ? "PASS" : "FAIL") << "  " << check.name
              << "  worst=" << check.worst << "  tol=" << check.tolerance << '\n';
  if (!report.all_pass()) {
    std::cerr << "verify: invariant failure detected\n";
    return 1;
  }
  return 0;
}

int run_full(papr::ExperimentConfig<Real> config, const std::string& epsilon,
             const GammaOptions& gamma) {
  config.epsilon = epsilon == "auto"
                       ? papr::auto_epsilon<Real>(config.K, config.M, config.N)
                       : parse_epsilon(epsilon, config.K, config.M, config.N);
  config.gamma_grid = make_gamma_grid(gamma, config.K);
  const auto summary = papr::run_experiment(config);
  std::cout << "run: f " << summary.initial_objective << " -> "
            << summary.final_objective << " in " << summary.iterations_run
            << " iterations; " << summary.files.size() << " files in "
            << config.output_dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(papr::project_name) +
               ": moment-based PMEPR CCDF bounds and unitary-ensemble reduction"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string(papr::project_name) + " " + papr::project_version);

  // generate
  Eigen::Index K = 128, M = 2000, N = 50, J = 16;
  std::string constellation = "qam16";
  bool unnormalized = false;
  std::uint64_t seed = 0;
  std::string out = "codebook.txt";
  auto* generate = app.add_subcommand("generate", "Generate a random QAM codebook");
  generate->add_option("--K", K, "Symbols per codeword")->check(CLI::PositiveNumber);
  generate->add_option("--M", M, "Number of codewords")->check(CLI::PositiveNumber);
  generate->add_option("--N", N, "Number of subsets (must divide M)")
      ->check(CLI::PositiveNumber);
  generate->add_option("--constellation", constellation, "qam16|qam4|bpsk");
  generate->add_flag("--unnormalized", unnormalized,
                     "Keep raw lattice points instead of unit symbol energy");
  generate->add_option("--seed", seed, "RNG seed")->required();
  generate->add_option("--out", out, "Output codebook file");

  // bound
  std::string codebook;
  std::string ensemble_path;
  GammaOptions gamma;
  std::string bound_out = "bounds.txt";
  auto* bound = app.add_subcommand("bound", "Sweep the CCDF upper/lower bounds");
  bound->add_option("--codebook", codebook, "Codebook file")->required();
  bound->add_option("--ensemble", ensemble_path, "Optional unitary ensemble file");
  add_gamma_options(bound, gamma);
  bound->add_option("--out", bound_out, "Output sweep file");

  // optimize
  std::string epsilon = "auto";
  int iterations = 100;
  Real stop_tol = 1e-6;
  std::string projection = "symmetric";
  std::vector<int> snapshots = {1};
  std::string out_dir = "opt";
  auto* optimize = app.add_subcommand(
      "optimize", "Minimize the bound objective over one unitary per subset");
  optimize->add_option("--codebook", codebook, "Codebook file")->required();
  optimize->add_option("--epsilon", epsilon, "Step size or 'auto' (= N/M * 1/K^2)");
  optimize->add_option("--iterations", iterations, "Maximum iterations")
      ->check(CLI::PositiveNumber);
  optimize->add_option("--stop-tol", stop_tol, "Stop when max ||dW||_F drops below");
  optimize->add_option("--projection", projection, "symmetric|gram-schmidt");
  optimize->add_option("--snapshots", snapshots, "Snapshot iterations (1 = initial)")
      ->delimiter(',');
  optimize->add_option("--out-dir", out_dir, "Output directory");

  // ccdf
  std::string ccdf_out = "ccdf.txt";
  int iteration_label = 1;
  auto* ccdf = app.add_subcommand("ccdf", "Empirical PMEPR exceedance curve");
  ccdf->add_option("--codebook", codebook, "Codebook file")->required();
  ccdf->add_option("--ensemble", ensemble_path, "Optional unitary ensemble file");
  ccdf->add_option("--J", J, "Oversampling factor")->check(CLI::PositiveNumber);
  add_gamma_options(ccdf, gamma);
  ccdf->add_option("--iteration", iteration_label, "Iteration label for the curve");
  ccdf->add_option("--out", ccdf_out, "Output curve file");

  // verify
  std::vector<Eigen::Index> verify_Ks = {4, 8, 32};
  std::vector<std::uint64_t> verify_seeds = {1, 2, 3};
  auto* verify = app.add_subcommand("verify", "Run the module invariant suite");
  verify->add_option("--K", verify_Ks, "K values to check")->delimiter(',');
  verify->add_option("--seeds", verify_seeds, "Seeds to check")->delimiter(',');

  // run
  papr::ExperimentConfig<Real> config;
  std::string run_dir = "experiment";
  std::uint64_t fresh_seed = 0;
  bool has_fresh = false;
  auto* run = app.add_subcommand("run", "Full experiment pipeline");
  run->add_option("--K", config.K, "Symbols per codeword")->check(CLI::PositiveNumber);
  run->add_option("--M", config.M, "Number of codewords")->check(CLI::PositiveNumber);
  run->add_option("--N", config.N, "Number of subsets")->check(CLI::PositiveNumber);
  run->add_option("--J", config.J, "Oversampling factor")->check(CLI::PositiveNumber);
  run->add_option("--constellation", constellation, "qam16|qam4|bpsk");
  run->add_flag("--unnormalized", unnormalized,
                "Keep raw lattice points instead of unit symbol energy");
  run->add_option("--seed", config.seed, "RNG seed")->required();
  run->add_option("--epsilon", epsilon, "Step size or 'auto'");
  run->add_option("--iterations", config.iterations, "Maximum iterations")
      ->check(CLI::PositiveNumber);
  run->add_option("--stop-tol", config.stop_tol, "Convergence threshold");
  run->add_option("--projection", projection, "symmetric|gram-schmidt");
  run->add_option("--snapshots", config.snapshot_iters,
                  "Snapshot iterations (1 = initial)")
      ->delimiter(',');
  add_gamma_options(run, gamma);
  run->add_option("--fresh-eval-seed", fresh_seed,
                  "Also evaluate the CCDF on a fresh codebook with this seed");
  run->add_option("--out-dir", run_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);
  has_fresh = run->count("--fresh-eval-seed") > 0;

  try {
    if (*generate) return run_generate(K, M, N, constellation, unnormalized, seed, out);
    if (*bound) return run_bound(codebook, ensemble_path, gamma, bound_out);
    if (*optimize)
      return run_optimize(codebook, epsilon, iterations, stop_tol, projection,
                          snapshots, out_dir);
    if (*ccdf)
      return run_ccdf(codebook, ensemble_path, J, gamma, iteration_label, ccdf_out);
    if (*verify) return run_verify(verify_Ks, verify_seeds);
    if (*run) {
      config.constellation.kind = papr::constellation_from_string(constellation);
      config.constellation.normalized = !unnormalized;
      config.projection = parse_projection(projection);
      config.output_dir = run_dir;
      if (has_fresh) config.fresh_eval_seed = fresh_seed;
      return run_full(config, epsilon, gamma);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
