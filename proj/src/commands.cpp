#include "gssdc/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gssdc/config.hpp"
#include "gssdc/eval.hpp"
#include "gssdc/graph.hpp"
#include "gssdc/matrix_io.hpp"
#include "gssdc/random.hpp"
#include "gssdc/recovery.hpp"

namespace gssdc {

namespace {

// Distinguishes bad input (exit 2) from runtime failure (exit 1).
int run_guarded(const char* what, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "gssdc %s: %s\n", what, e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "gssdc %s: %s\n", what, e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "gssdc %s: %s\n", what, e.what());
    return 1;
  }
}

void seed_env_override(std::uint64_t& seed) {
  const char* env = std::getenv("GSSDC_SEED");
  if (!env || !*env) return;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw ConfigError(std::string("GSSDC_SEED is not an unsigned integer: '") + env + "'");
  seed = static_cast<std::uint64_t>(v);
}

GraphSpec load_graph_file(const std::string& path) {
  GraphSpec g;
  g.weights = load_matrix(path);
  g.n_vertices = static_cast<int>(g.weights.rows());
  validate_graph(g);
  return g;
}

std::vector<int> parse_index_list(const std::string& body) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos < body.size()) {
    size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    const std::string field = body.substr(pos, comma - pos);
    pos = comma + 1;
    if (!field.empty()) out.push_back(std::stoi(field));
  }
  std::sort(out.begin(), out.end());
  return out;
}

PriorModel prior_from_config(const KeyValueConfig& kv, PriorKind kind, const SpectralBasis& basis,
                             int m_samples) {
  const double lmax = basis.eigenvalues.maxCoeff();
  switch (kind) {
    case PriorKind::subspace:
      return make_subspace_prior(
          basis, kv.get_int("sb_k", 16),
          make_spectral_fn(SpectralPreset::parse(kv.get_string("sb_response", "pgs_exp{c=1.5}")),
                           lmax));
    case PriorKind::smoothness:
      return make_smoothness_prior(
          basis,
          make_spectral_fn(SpectralPreset::parse(kv.get_string("sm_response", "sm_ratio{eps=0.1}")),
                           lmax));
    case PriorKind::stochastic: {
      const double nv = kv.get_double("noise_variance", 0.0);
      Eigen::MatrixXd rn;
      if (nv > 0.0) rn = nv * Eigen::MatrixXd::Identity(m_samples, m_samples);
      if (kv.has("rx_file"))
        return make_stochastic_prior_from_cov(load_matrix(kv.get_string("rx_file")),
                                              std::move(rn));
      return make_stochastic_prior(
          basis,
          make_spectral_fn(SpectralPreset::parse(kv.get_string("st_power", "st_gauss{}")), lmax),
          std::move(rn));
    }
  }
  throw std::invalid_argument("design: bad prior kind");
}

SolverConfig solver_from_config(const KeyValueConfig& kv, PriorKind kind) {
  SolverConfig scfg = tuned_solver_config(kind);
  scfg.lambda = kv.get_double("lambda", scfg.lambda);
  scfg.delta = kv.get_double("delta", scfg.delta);
  scfg.gamma1_0 = kv.get_double("gamma1", scfg.gamma1_0);
  scfg.gamma2_0 = kv.get_double("gamma2", scfg.gamma2_0);
  scfg.decay = kv.get_double("decay", scfg.decay);
  scfg.tol = kv.get_double("tol", scfg.tol);
  scfg.max_iters = kv.get_int("max_iters", scfg.max_iters);
  return scfg;
}

}  // namespace

int cmd_graph_gen(const GraphGenArgs& args) {
  return run_guarded("graph-gen", [&]() -> int {
    if (args.out.empty()) throw ConfigError("graph-gen: --out is required");
    const GraphSpec g =
        build_knn_sensor_graph(args.n, args.k, args.seed, SensorGraphOptions{args.theta, 32});
    save_matrix(args.out, g.weights);
    return 0;
  });
}

int cmd_design(const DesignArgs& args) {
  return run_guarded("design", [&]() -> int {
    if (args.graph_path.empty() || args.config_path.empty() || args.out_path.empty())
      throw ConfigError("design: --graph, --config and --out are required");

    const KeyValueConfig kv = KeyValueConfig::load(args.config_path);
    const PriorKind kind =
        prior_kind_from_tag(!args.prior.empty() ? args.prior : kv.get_string("prior", "sb"));

    const GraphSpec g = load_graph_file(args.graph_path);
    const SpectralBasis basis = spectral_decomposition(laplacian(g));
    const int m = kv.get_int("m", 32);
    const PriorModel prior = prior_from_config(kv, kind, basis, m);

    std::uint64_t seed = kv.get_u64("seed", 0);
    seed_env_override(seed);

    VertexPartition part;
    if (kv.has("s_known") || kv.has("n_known")) {
      // Explicit pre-selection lists; everything else is undecided.
      part.n_vertices = g.n_vertices;
      part.z = kv.get_int("z");
      part.s_known = parse_index_list(kv.get_string("s_known", ""));
      part.n_known = parse_index_list(kv.get_string("n_known", ""));
      std::vector<char> taken(g.n_vertices, 0);
      for (int v : part.s_known) {
        if (v < 0 || v >= g.n_vertices)
          throw ConfigError("design: s_known index " + std::to_string(v) + " out of range");
        taken[v] = 1;
      }
      for (int v : part.n_known) {
        if (v < 0 || v >= g.n_vertices)
          throw ConfigError("design: n_known index " + std::to_string(v) + " out of range");
        taken[v] = 1;
      }
      for (int v = 0; v < g.n_vertices; ++v)
        if (!taken[v]) part.undecided.push_back(v);
      part.validate();
    } else {
      part = make_design(design_from_tag(kv.get_string("design", "i")), prior.b,
                         kv.get_int("s_size", 16), kv.get_int("n_size", 16), kv.get_int("z", 32),
                         split_seed(seed, 2));
    }

    SolverConfig scfg = solver_from_config(kv, kind);
    scfg.seed = split_seed(seed, 5);

    auto [op, trace] = design_sampling_operator(prior.b, part, m, scfg);

    save_matrix(args.out_path, op.s);
    if (!args.trace_path.empty()) save_trace_csv(args.trace_path, trace);
    if (!args.partition_path.empty()) save_partition(args.partition_path, op.partition);
    if (!trace.converged)
      std::fprintf(stderr, "gssdc design: stopped at max_iters without meeting tol\n");
    return 0;
  });
}

int cmd_experiment(const ExperimentArgs& args) {
  return run_guarded("experiment", [&]() -> int {
    if (args.config_path.empty() || args.out_dir.empty())
      throw ConfigError("experiment: --config and --out are required");

    const KeyValueConfig kv = KeyValueConfig::load(args.config_path);
    ExperimentConfig cfg = experiment_config_from(kv);
    if (args.jobs > 0) cfg.jobs = args.jobs;
    seed_env_override(cfg.master_seed);
    if (cfg.trials < 1 && cfg.signals_file.empty())
      throw ConfigError("experiment: trials must be at least 1");

    std::filesystem::create_directories(args.out_dir);
    const ExperimentResult result = run_experiment(cfg);

    write_text_file((std::filesystem::path(args.out_dir) / "trials.csv").string(),
                    trials_csv(result));
    write_text_file((std::filesystem::path(args.out_dir) / "aggregate.csv").string(),
                    aggregate_csv(result));

    if (!result.trials.empty() && result.failed == static_cast<int>(result.trials.size())) {
      std::fprintf(stderr, "gssdc experiment: all %d trials failed\n", result.failed);
      return 1;
    }
    return 0;
  });
}

}  // namespace gssdc
