#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gssdc/partition.hpp"

namespace gssdc {

struct SolverConfig {
  double lambda = 1.0;    // row-sparsity weight
  double delta = 0.1;     // Tikhonov weight
  double gamma1_0 = 1e-3; // primal step size
  double gamma2_0 = 1e-5; // dual step size
  double decay = 0.9999;  // per-iteration multiplicative step decay
  double tol = 1e-5;      // stop when ||S_t - S_{t-1}||_F / ||S_{t-1}||_F <= tol
  int max_iters = 200000;
  std::uint64_t seed = 0; // Gaussian initializer seed

  void validate() const;
};

// Designed vertex-wise sampling operator (n x m) plus the partition it was
// designed under.
struct SamplingOperator {
  Eigen::MatrixXd s;
  VertexPartition partition;
};

struct SolverTrace {
  int iterations = 0;
  bool converged = false;
  bool zero_iterate_stop = false;      // hit an exactly-zero iterate at a stop check
  bool forbidden_rows_clean = true;    // every iterate kept forbidden rows bitwise zero
  double final_sigma_min = 0.0;        // smallest singular value of B * S_final
  std::vector<double> objective_values;
  std::vector<double> rel_changes;
  std::vector<double> gamma1_values;
  std::vector<double> gamma2_values;
};

// Value of the difference-of-convex design objective at S: indicator of the
// forbidden rows (+inf if violated) + lambda * sum of undecided row norms
// + delta/2 ||S||_F^2 - ||B S||_* - lambda * (sum of the k' largest undecided
// row norms).
double objective_value(const Eigen::MatrixXd& s, const Eigen::MatrixXd& b,
                       const VertexPartition& part, double lambda, double delta);

// Double-proximal primal-dual DC iteration. Primal update: prox of the convex
// row-separable part at S + gamma1 * L^T Z; dual update: prox of the
// conjugate of the concave part's Fenchel transform at Z + gamma2 * L S,
// where L stacks B on top of the undecided-row selector. Steps decay
// multiplicatively each iteration.
std::pair<SamplingOperator, SolverTrace> design_sampling_operator(const Eigen::MatrixXd& b,
                                                                  const VertexPartition& part,
                                                                  int m_samples,
                                                                  const SolverConfig& cfg);

// CSV with header iter,objective,rel_change,gamma1,gamma2.
void save_trace_csv(const std::string& path, const SolverTrace& trace);

}  // namespace gssdc
