#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "papr/ccdf.hpp"
#include "papr/codebook.hpp"
#include "papr/io.hpp"
#include "papr/optimizer.hpp"
#include "papr/version.hpp"

namespace papr {

template <class Real>
struct ExperimentConfig {
  Eigen::Index K = 128;
  Eigen::Index M = 2000;
  Eigen::Index N = 50;
  Eigen::Index J = 16;
  ConstellationSpec constellation{};
  std::uint64_t seed = 1;
  Real epsilon = 0;  // <= 0 selects auto_epsilon(K, M, N)
  int iterations = 100;
  Real stop_tol = Real(1e-6);
  Projection projection = Projection::symmetric;
  std::vector<int> snapshot_iters = {1};
  std::vector<Real> gamma_grid;  // empty selects default_gamma_grid(K)
  std::optional<std::uint64_t> fresh_eval_seed;  // CCDF on a held-out codebook
  std::filesystem::path output_dir;
};

template <class Real>
struct ExperimentSummary {
  Real initial_objective = 0;
  Real final_objective = 0;
  int iterations_run = 0;
  std::vector<std::filesystem::path> files;
};

namespace detail {

inline std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

// End-to-end pipeline: generate, bound, optimize with snapshots, per-snapshot
// empirical CCDF, bound sweeps for the identity and final ensembles, trace and
// manifest. Data files are byte-identical across runs with the same config;
// only the manifest timestamp differs.
template <class Real>
ExperimentSummary<Real> run_experiment(const ExperimentConfig<Real>& config) {
  if (config.output_dir.empty())
    throw std::invalid_argument("output_dir must be set");
  if (config.J < 1) throw std::invalid_argument("J must be >= 1");
  if (config.iterations < 1) throw std::invalid_argument("iterations must be >= 1");

  const std::vector<Real> gammas = config.gamma_grid.empty()
                                       ? default_gamma_grid<Real>(config.K)
                                       : config.gamma_grid;
  validate_gamma_grid(gammas);

  std::filesystem::create_directories(config.output_dir);
  ExperimentSummary<Real> summary;
  const auto emit = [&](const std::filesystem::path& name) {
    summary.files.push_back(config.output_dir / name);
    return summary.files.back();
  };

  const Codebook<Real> book = generate_codebook<Real>(
      config.constellation, config.K, config.M, config.N, config.seed);
  io::write_codebook(emit("codebook.txt"), book);

  const SpectralPair<Real> pair = build_spectral_pair<Real>(config.K);
  io::write_bound_sweep(emit("bounds_identity.txt"),
                        bound_sweep<Real>(book, pair, nullptr, gammas));

  OptimizerConfig<Real> opt;
  opt.epsilon = config.epsilon > Real(0)
                    ? config.epsilon
                    : auto_epsilon<Real>(config.K, config.M, config.N);
  opt.max_iters = config.iterations;
  opt.stop_tol = config.stop_tol;
  opt.projection = config.projection;
  opt.snapshot_iters = config.snapshot_iters;
  const auto [ensemble, trace] = optimize(book, pair, opt);
  io::write_trace(emit("trace.txt"), trace);

  for (const auto& [iter, snapshot] : trace.snapshots) {
    io::write_ensemble(emit("ensemble_iter" + std::to_string(iter) + ".txt"),
                       snapshot);
    CcdfCurve<Real> curve = empirical_ccdf(book, &snapshot, config.J, gammas);
    curve.iteration = iter;
    io::write_ccdf_curve(emit("ccdf_iter" + std::to_string(iter) + ".txt"), curve);
  }

  const int final_iter = static_cast<int>(trace.entries.size()) + 1;
  io::write_ensemble(emit("ensemble_final.txt"), ensemble);
  CcdfCurve<Real> final_curve = empirical_ccdf(book, &ensemble, config.J, gammas);
  final_curve.iteration = final_iter;
  io::write_ccdf_curve(emit("ccdf_final.txt"), final_curve);
  io::write_bound_sweep(emit("bounds_final.txt"),
                        bound_sweep<Real>(book, pair, &ensemble, gammas));

  if (config.fresh_eval_seed) {
    const Codebook<Real> fresh = generate_codebook<Real>(
        config.constellation, config.K, config.M, config.N, *config.fresh_eval_seed);
    CcdfCurve<Real> fresh_identity = empirical_ccdf<Real>(fresh, nullptr, config.J, gammas);
    fresh_identity.iteration = 1;
    io::write_ccdf_curve(emit("ccdf_fresh_iter1.txt"), fresh_identity);
    CcdfCurve<Real> fresh_final = empirical_ccdf(fresh, &ensemble, config.J, gammas);
    fresh_final.iteration = final_iter;
    io::write_ccdf_curve(emit("ccdf_fresh_final.txt"), fresh_final);
  }

  summary.initial_objective = trace.entries.front().objective;
  summary.final_objective = trace.final_objective;
  summary.iterations_run = static_cast<int>(trace.entries.size());

  nlohmann::json manifest;
  manifest["version"] = std::string(project_name) + " " + project_version;
  manifest["timestamp_utc"] = detail::utc_timestamp();
  manifest["config"] = {
      {"K", config.K},
      {"M", config.M},
      {"N", config.N},
      {"J", config.J},
      {"constellation", to_string(config.constellation.kind)},
      {"normalized", config.constellation.normalized},
      {"seed", config.seed},
      {"epsilon", static_cast<double>(opt.epsilon)},
      {"iterations", config.iterations},
      {"stop_tol", static_cast<double>(config.stop_tol)},
      {"projection", to_string(config.projection)},
      {"snapshot_iters", config.snapshot_iters},
      {"gamma_min", static_cast<double>(gammas.front())},
      {"gamma_max", static_cast<double>(gammas.back())},
      {"gamma_points", gammas.size()},
  };
  if (config.fresh_eval_seed)
    manifest["config"]["fresh_eval_seed"] = *config.fresh_eval_seed;
  manifest["summary"] = {
      {"initial_objective", static_cast<double>(summary.initial_objective)},
      {"final_objective", static_cast<double>(summary.final_objective)},
      {"iterations_run", summary.iterations_run},
  };
  std::vector<std::string> names;
  names.reserve(summary.files.size());
  for (const auto& f : summary.files) names.push_back(f.filename().string());
  manifest["outputs"] = names;
  {
    auto out = io::detail::open_out(config.output_dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
  summary.files.push_back(config.output_dir / "manifest.json");
  return summary;
}

}  // namespace papr
