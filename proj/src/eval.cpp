#include "gssdc/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

#include "gssdc/graph.hpp"
#include "gssdc/kernels.hpp"
#include "gssdc/matrix_io.hpp"
#include "gssdc/random.hpp"
#include "gssdc/recovery.hpp"

namespace gssdc {

double mse_linear(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x) {
  if (x_hat.size() != x.size() || x.size() == 0)
    throw std::invalid_argument("mse: length mismatch");
  return (x_hat - x).squaredNorm() / static_cast<double>(x.size());
}

double mse_db(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x) {
  const double lin = mse_linear(x_hat, x);
  if (lin == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(lin);
}

int count_contributive(const Eigen::MatrixXd& s, double rtol) {
  if (s.size() == 0) return 0;
  Eigen::VectorXd sq(s.rows());
  kernels::row_sumsq(s.data(), static_cast<std::size_t>(s.rows()),
                     static_cast<std::size_t>(s.cols()), sq.data());
  const Eigen::VectorXd norms = sq.cwiseSqrt();
  const double max_norm = norms.maxCoeff();
  if (max_norm == 0.0) return 0;
  int count = 0;
  for (Eigen::Index i = 0; i < norms.size(); ++i)
    if (norms(i) > rtol * max_norm) ++count;
  return count;
}

SolverConfig tuned_solver_config(PriorKind kind) {
  SolverConfig cfg;
  switch (kind) {
    case PriorKind::subspace:
      cfg.lambda = 1.05;
      cfg.delta = 1e-1;
      cfg.gamma1_0 = 1e-3;
      cfg.gamma2_0 = 1e-5;
      break;
    case PriorKind::smoothness:
      cfg.lambda = 5.1;
      cfg.delta = 1e-1;
      cfg.gamma1_0 = 1e-2;
      cfg.gamma2_0 = 1e-2;
      break;
    case PriorKind::stochastic:
      cfg.lambda = 0.75;
      cfg.delta = 1e-6;
      cfg.gamma1_0 = 1e-3;
      cfg.gamma2_0 = 1e-5;
      break;
  }
  return cfg;
}

std::vector<SignalInstance> ingest_signals(const std::string& path, int n_vertices) {
  const Eigen::MatrixXd m = load_matrix(path);
  if (m.rows() != n_vertices)
    throw std::invalid_argument("signals: " + path + " has " + std::to_string(m.rows()) +
                                " rows, graph has " + std::to_string(n_vertices) + " vertices");
  if (!m.allFinite()) throw std::invalid_argument("signals: " + path + " has non-finite entries");
  if (m.cols() == 0) throw std::invalid_argument("signals: " + path + " has no columns");
  std::vector<SignalInstance> out;
  out.reserve(m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    out.push_back(SignalInstance{m.col(j), "file", static_cast<std::uint64_t>(j)});
  return out;
}

namespace {

struct TrialContext {
  const ExperimentConfig* cfg = nullptr;
  // file-mode shared pieces (one graph, one prior, one operator)
  bool shared = false;
  PriorModel prior;
  SamplingOperator op;
  SolverTrace trace;
  std::vector<SignalInstance> signals;
};

PriorModel build_prior(const ExperimentConfig& cfg, const SpectralBasis& basis) {
  const double lmax = basis.eigenvalues.maxCoeff();
  switch (cfg.prior) {
    case PriorKind::subspace:
      return make_subspace_prior(basis, cfg.sb_k, make_spectral_fn(cfg.sb_response, lmax));
    case PriorKind::smoothness:
      return make_smoothness_prior(basis, make_spectral_fn(cfg.sm_response, lmax));
    case PriorKind::stochastic: {
      const Eigen::Index n = basis.eigenvalues.size();
      Eigen::MatrixXd rn;
      if (cfg.noise_variance > 0.0)
        rn = cfg.noise_variance * Eigen::MatrixXd::Identity(cfg.m_samples, cfg.m_samples);
      if (!cfg.rx_file.empty()) {
        Eigen::MatrixXd rx = load_matrix(cfg.rx_file);
        if (rx.rows() != n)
          throw std::invalid_argument("rx_file: dimension does not match the graph");
        return make_stochastic_prior_from_cov(std::move(rx), std::move(rn));
      }
      return make_stochastic_prior(basis, make_spectral_fn(cfg.st_power, lmax), std::move(rn));
    }
  }
  throw std::invalid_argument("experiment: bad prior kind");
}

SignalInstance draw_signal(const ExperimentConfig& cfg, const PriorModel& prior,
                           const SpectralBasis& basis, std::uint64_t seed) {
  const double lmax = basis.eigenvalues.maxCoeff();
  switch (cfg.prior) {
    case PriorKind::subspace:
      return gen_pgs_signal(prior, seed);
    case PriorKind::smoothness:
      return gen_gmrf_signal(basis, make_spectral_fn(cfg.sm_signal_power, lmax), seed);
    case PriorKind::stochastic:
      return gen_gmrf_signal(basis, make_spectral_fn(cfg.st_power, lmax), seed);
  }
  throw std::invalid_argument("experiment: bad prior kind");
}

TrialResult run_one_trial(const TrialContext& ctx, int t) {
  const ExperimentConfig& cfg = *ctx.cfg;
  const std::uint64_t trial_seed = split_seed(cfg.master_seed, static_cast<std::uint64_t>(t));

  TrialResult res;
  res.trial = t;
  res.prior_tag = prior_tag(cfg.prior);
  res.design_tag = design_tag(cfg.design);
  res.seed = trial_seed;

  Eigen::VectorXd x;
  const SamplingOperator* op = nullptr;
  const PriorModel* prior = nullptr;
  SamplingOperator local_op;
  PriorModel local_prior;
  SolverTrace local_trace;

  if (ctx.shared) {
    x = ctx.signals[t].x;
    op = &ctx.op;
    prior = &ctx.prior;
    res.converged = ctx.trace.converged;
    res.iterations = ctx.trace.iterations;
  } else {
    GraphSpec g = build_knn_sensor_graph(cfg.graph_n, cfg.graph_k, split_seed(trial_seed, 1),
                                         SensorGraphOptions{cfg.graph_theta, 32});
    const SpectralBasis basis = spectral_decomposition(laplacian(g));
    local_prior = build_prior(cfg, basis);

    const VertexPartition part = make_design(cfg.design, local_prior.b, cfg.s_size, cfg.n_size,
                                             cfg.z, split_seed(trial_seed, 2));
    SolverConfig scfg = cfg.solver;
    scfg.seed = split_seed(trial_seed, 5);
    auto [designed, trace] = design_sampling_operator(local_prior.b, part, cfg.m_samples, scfg);
    local_op = std::move(designed);
    local_trace = std::move(trace);
    res.converged = local_trace.converged;
    res.iterations = local_trace.iterations;

    x = draw_signal(cfg, local_prior, basis, split_seed(trial_seed, 3)).x;
    op = &local_op;
    prior = &local_prior;
  }

  Eigen::VectorXd c = sample(*op, x);
  if (cfg.noise_variance > 0.0) c = add_noise(c, cfg.noise_variance, split_seed(trial_seed, 4));

  const Recovery rec = recover(*op, *prior, c);
  res.rank_warning = rec.rank_warning;
  res.mse_linear_value = mse_linear(rec.x_hat, x);
  res.mse_db_value = mse_db(rec.x_hat, x);
  res.contributive = count_contributive(op->s, cfg.contrib_rtol);
  return res;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1 && cfg.signals_file.empty())
    throw std::invalid_argument("experiment: need at least one trial");
  if (!cfg.signals_file.empty() && cfg.graph_file.empty())
    throw std::invalid_argument("experiment: signals_file requires graph_file");

  TrialContext ctx;
  ctx.cfg = &cfg;

  int trials = cfg.trials;
  if (!cfg.signals_file.empty()) {
    // One fixed graph and operator; each signal column is a trial.
    GraphSpec g;
    g.weights = load_matrix(cfg.graph_file);
    g.n_vertices = static_cast<int>(g.weights.rows());
    validate_graph(g);
    const SpectralBasis basis = spectral_decomposition(laplacian(g));
    ctx.prior = build_prior(cfg, basis);
    const VertexPartition part = make_design(cfg.design, ctx.prior.b, cfg.s_size, cfg.n_size,
                                             cfg.z, split_seed(cfg.master_seed, 2));
    SolverConfig scfg = cfg.solver;
    scfg.seed = split_seed(cfg.master_seed, 5);
    auto [designed, trace] = design_sampling_operator(ctx.prior.b, part, cfg.m_samples, scfg);
    ctx.op = std::move(designed);
    ctx.trace = std::move(trace);
    ctx.signals = ingest_signals(cfg.signals_file, g.n_vertices);
    ctx.shared = true;
    trials = static_cast<int>(ctx.signals.size());
  } else if (!cfg.graph_file.empty()) {
    throw std::invalid_argument("experiment: graph_file without signals_file is not supported; "
                                "use the design command for one-off operators");
  }

  ExperimentResult result;
  result.trials.resize(trials);

  const int jobs = std::max(1, std::min(cfg.jobs, trials));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        result.trials[t] = run_one_trial(ctx, t);
      } catch (const std::exception& e) {
        TrialResult res;
        res.trial = t;
        res.prior_tag = prior_tag(cfg.prior);
        res.design_tag = design_tag(cfg.design);
        res.seed = split_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
        res.mse_db_value = std::numeric_limits<double>::quiet_NaN();
        res.mse_linear_value = std::numeric_limits<double>::quiet_NaN();
        res.error = e.what();
        result.trials[t] = std::move(res);
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const auto& res : result.trials) {
    if (!res.error.empty()) {
      ++result.failed;
      std::fprintf(stderr, "gssdc: trial %d failed: %s\n", res.trial, res.error.c_str());
    }
  }
  return result;
}

std::string trials_csv(const ExperimentResult& result) {
  std::string out = "trial,prior,design,seed,mse_db,contributive,converged,iters\n";
  for (const auto& r : result.trials) {
    out += std::to_string(r.trial);
    out += ',';
    out += r.prior_tag;
    out += ',';
    out += r.design_tag;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += format_value(r.mse_db_value);
    out += ',';
    out += std::to_string(r.contributive);
    out += ',';
    out += r.converged ? '1' : '0';
    out += ',';
    out += std::to_string(r.iterations);
    out += '\n';
  }
  return out;
}

namespace {

double sample_stddev(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace

std::string aggregate_csv(const ExperimentResult& result) {
  std::vector<double> lin, db, contrib, iters;
  int converged = 0;
  for (const auto& r : result.trials) {
    if (!r.error.empty()) continue;
    lin.push_back(r.mse_linear_value);
    db.push_back(r.mse_db_value);
    contrib.push_back(static_cast<double>(r.contributive));
    iters.push_back(static_cast<double>(r.iterations));
    if (r.converged) ++converged;
  }
  auto mean_of = [](const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
  };
  const double lin_mean = mean_of(lin);
  const double db_of_mean =
      lin.empty() ? std::numeric_limits<double>::quiet_NaN()
                  : (lin_mean == 0.0 ? -std::numeric_limits<double>::infinity()
                                     : 10.0 * std::log10(lin_mean));
  const double contrib_mean = mean_of(contrib);

  std::string out = "metric,value\n";
  auto row = [&](const char* name, double v) {
    out += name;
    out += ',';
    out += format_value(v);
    out += '\n';
  };
  out += "trials," + std::to_string(result.trials.size()) + "\n";
  out += "failed," + std::to_string(result.failed) + "\n";
  out += "converged," + std::to_string(converged) + "\n";
  row("mse_linear_mean", lin_mean);
  row("mse_linear_stddev", sample_stddev(lin, lin_mean));
  row("mse_db_of_mean", db_of_mean);
  row("mse_db_mean", mean_of(db));
  row("contributive_mean", contrib_mean);
  row("contributive_stddev", sample_stddev(contrib, contrib_mean));
  row("iters_mean", mean_of(iters));
  return out;
}

ExperimentConfig experiment_config_from(const KeyValueConfig& kv) {
  ExperimentConfig cfg;
  cfg.prior = prior_kind_from_tag(kv.get_string("prior", "sb"));
  cfg.design = design_from_tag(kv.get_string("design", "i"));
  cfg.trials = kv.get_int("trials", 20);
  cfg.master_seed = kv.get_u64("master_seed", 0);

  cfg.graph_n = kv.get_int("graph_n", 256);
  cfg.graph_k = kv.get_int("graph_k", 6);
  cfg.graph_theta = kv.get_double("graph_theta", 0.0);
  cfg.graph_file = kv.get_string("graph_file", "");

  cfg.m_samples = kv.get_int("m", 32);
  cfg.z = kv.get_int("z", 32);
  cfg.s_size = kv.get_int("s_size", 16);
  cfg.n_size = kv.get_int("n_size", 16);

  cfg.sb_k = kv.get_int("sb_k", 16);
  cfg.sb_response = SpectralPreset::parse(kv.get_string("sb_response", "pgs_exp{c=1.5}"));
  cfg.sm_response = SpectralPreset::parse(kv.get_string("sm_response", "sm_ratio{eps=0.1}"));
  cfg.st_power = SpectralPreset::parse(kv.get_string("st_power", "st_gauss{}"));
  cfg.sm_signal_power =
      SpectralPreset::parse(kv.get_string("sm_signal_power", "gmrf_lowpass{a=0.1}"));
  cfg.noise_variance = kv.get_double("noise_variance", 0.0);

  cfg.signals_file = kv.get_string("signals_file", "");
  cfg.rx_file = kv.get_string("rx_file", "");

  cfg.solver = tuned_solver_config(cfg.prior);
  cfg.solver.lambda = kv.get_double("lambda", cfg.solver.lambda);
  cfg.solver.delta = kv.get_double("delta", cfg.solver.delta);
  cfg.solver.gamma1_0 = kv.get_double("gamma1", cfg.solver.gamma1_0);
  cfg.solver.gamma2_0 = kv.get_double("gamma2", cfg.solver.gamma2_0);
  cfg.solver.decay = kv.get_double("decay", cfg.solver.decay);
  cfg.solver.tol = kv.get_double("tol", cfg.solver.tol);
  cfg.solver.max_iters = kv.get_int("max_iters", cfg.solver.max_iters);

  cfg.contrib_rtol = kv.get_double("contrib_rtol", 1e-8);
  cfg.jobs = kv.get_int("jobs", 1);
  return cfg;
}

}  // namespace gssdc
