#pragma once

#include <Eigen/Dense>

#include "gssdc/priors.hpp"
#include "gssdc/solver.hpp"

namespace gssdc {

struct Recovery {
  Eigen::VectorXd x_hat;
  bool rank_warning = false;  // interpolation system was rank-deficient
};

// c = S^T x.
Eigen::VectorXd sample(const SamplingOperator& op, const Eigen::VectorXd& x);

// x_hat = A pinv(S^T A) c; warns when rank(S^T A) < K.
Recovery recover_subspace(const SamplingOperator& op, const PriorModel& prior,
                          const Eigen::VectorXd& c);

// x_hat = W pinv(S^T W) c with W = (L*^T L*)^{-1} S = B^T B S; warns when
// rank(S^T W) < M.
Recovery recover_smoothness(const SamplingOperator& op, const PriorModel& prior,
                            const Eigen::VectorXd& c);

// x_hat = R_x S pinv(S^T R_x S + R_n) c (pinv-safe, no warning path).
Recovery recover_stochastic(const SamplingOperator& op, const PriorModel& prior,
                            const Eigen::VectorXd& c);

// Dispatch on the prior kind.
Recovery recover(const SamplingOperator& op, const PriorModel& prior, const Eigen::VectorXd& c);

}  // namespace gssdc
