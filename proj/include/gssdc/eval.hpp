#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gssdc/config.hpp"
#include "gssdc/partition.hpp"
#include "gssdc/priors.hpp"
#include "gssdc/solver.hpp"

namespace gssdc {

// 10 log10(||x_hat - x||^2 / n); an exact-zero residual reports -inf.
double mse_linear(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x);
double mse_db(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x);

// Rows whose norm exceeds rtol * (largest row norm); the zero matrix has none.
int count_contributive(const Eigen::MatrixXd& s, double rtol = 1e-8);

// Step-size schedule tuned per prior for the reference synthetic setup.
SolverConfig tuned_solver_config(PriorKind kind);

struct TrialResult {
  int trial = 0;
  std::string prior_tag;
  std::string design_tag;
  std::uint64_t seed = 0;
  double mse_db_value = 0.0;
  double mse_linear_value = 0.0;  // not serialized; feeds the aggregates
  int contributive = 0;
  bool converged = false;
  int iterations = 0;
  bool rank_warning = false;      // not serialized
  std::string error;              // nonempty = trial failed (stderr detail)
};

struct ExperimentConfig {
  PriorKind prior = PriorKind::subspace;
  DesignKind design = DesignKind::greedy_mandatory;
  int trials = 20;
  std::uint64_t master_seed = 0;

  int graph_n = 256;
  int graph_k = 6;
  double graph_theta = 0.0;      // 0 = mean kNN distance
  std::string graph_file;        // when set, one fixed graph for every trial

  int m_samples = 32;
  int z = 32;
  int s_size = 16;
  int n_size = 16;

  int sb_k = 16;
  SpectralPreset sb_response{"pgs_exp", {}};
  SpectralPreset sm_response{"sm_ratio", {}};
  SpectralPreset st_power{"st_gauss", {}};
  SpectralPreset sm_signal_power{"gmrf_lowpass", {}};
  double noise_variance = 0.0;   // added to samples; also R_n = variance * I

  std::string signals_file;      // when set, trials iterate over its columns
  std::string rx_file;           // explicit covariance for the stochastic prior

  SolverConfig solver;           // seed field is ignored (per-trial derived)
  double contrib_rtol = 1e-8;
  int jobs = 1;
};

struct ExperimentResult {
  std::vector<TrialResult> trials;
  int failed = 0;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Loads one signal per column; rejects non-finite entries and wrong lengths.
std::vector<SignalInstance> ingest_signals(const std::string& path, int n_vertices);

// Header: trial,prior,design,seed,mse_db,contributive,converged,iters.
std::string trials_csv(const ExperimentResult& result);
// metric,value rows; both 10log10(mean linear MSE) and mean per-trial dB.
std::string aggregate_csv(const ExperimentResult& result);

ExperimentConfig experiment_config_from(const KeyValueConfig& kv);

}  // namespace gssdc
