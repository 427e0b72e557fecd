#pragma once

#include <Eigen/Dense>

#include "gssdc/partition.hpp"

namespace gssdc {

// Dual variable of the splitting: z1 pairs with the nuclear-norm term (same
// shape as B*S), z2 with the top-K row penalty on the undecided rows.
struct DualBlock {
  Eigen::MatrixXd z1;
  Eigen::MatrixXd z2;
};

// Row-separable prox of the convex part: forbidden rows are pinned to exact
// zero, mandatory rows are only Tikhonov-shrunk by 1/(1+gamma*delta),
// undecided rows additionally pass through the group soft threshold
// max(0, 1 - gamma*lambda/||row||).
Eigen::MatrixXd prox_f2(const Eigen::MatrixXd& m, const VertexPartition& part, double gamma,
                        double lambda, double delta);

// Singular value soft threshold: U max(Sigma - gamma, 0) V^T.
Eigen::MatrixXd prox_nuclear(const Eigen::MatrixXd& m, double gamma);

// Prox of weight * (sum of the K largest row norms). Row directions are
// preserved; the new row norms are max(0, mu - w*) where w* is the Euclidean
// projection of the row-norm vector mu onto {0 <= w_i <= weight,
// sum w = K*weight}. Errors if K < 1 or K > rows.
Eigen::MatrixXd prox_topk_rows(const Eigen::MatrixXd& m, double weight, int k);

// Two-stage k*-search variant kept for comparison only (it is not the exact
// prox; see the tests for a 2-row instance where the two differ). Never used
// by the solver.
Eigen::MatrixXd prox_topk_rows_ksearch(const Eigen::MatrixXd& m, double weight, int k);

// Projection of mu onto the capped simplex {0 <= w_i <= cap, sum w = k*cap};
// exposed for the property tests. k = 0 returns the zero vector.
Eigen::VectorXd capped_simplex_projection(const Eigen::VectorXd& mu, double cap, int k);

// Blockwise prox of tau * h where h(z1, z2) = ||z1||_* + lambda * (sum of the
// K largest row norms of z2); K = 0 drops the z2 term (identity block).
DualBlock prox_h(const DualBlock& z, double tau, double lambda, int k);

// Prox of gamma * h* (convex conjugate) via the extended Moreau identity:
// prox_{gamma h*}(z) = z - gamma * prox_{h / gamma}(z / gamma).
DualBlock prox_h_conj(const DualBlock& z, double gamma, double lambda, int k);

// Moore-Penrose pseudoinverse with the usual singular value cutoff
// max(rows, cols) * eps * sigma_max.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m);

// Number of singular values above the pseudoinverse cutoff.
int numerical_rank(const Eigen::MatrixXd& m);

// Smallest of the min(rows, cols) singular values.
double sigma_min(const Eigen::MatrixXd& m);

}  // namespace gssdc
