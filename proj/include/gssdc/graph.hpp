#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace gssdc {

// Undirected weighted graph as a dense symmetric weight matrix with zero
// diagonal (desk scale, no sparse structure needed).
struct GraphSpec {
  int n_vertices = 0;
  Eigen::MatrixXd weights;
};

// Eigendecomposition of the combinatorial Laplacian: eigenvalues ascending,
// eigenvectors orthonormal in the columns, deterministic sign convention
// (largest-magnitude entry of each vector is positive; ties broken by lowest
// index). Eigenvalues below 1e-12 are clamped to zero.
struct SpectralBasis {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

struct SensorGraphOptions {
  double theta = 0.0;   // Gaussian kernel width; 0 = mean kNN distance
  int max_retries = 32; // reseeded redraws if a draw is disconnected
};

// Random sensor graph: n points uniform on [0,1]^2, k nearest neighbours,
// w = exp(-d^2 / (2 theta^2)), symmetrized with max(w_ij, w_ji). Draws are
// retried with derived seeds until connected; failure after the retry budget
// raises an error naming the seed.
GraphSpec build_knn_sensor_graph(int n, int k, std::uint64_t seed,
                                 const SensorGraphOptions& opts = {});

// Checks symmetry (1e-12), zero diagonal, nonnegative finite weights.
void validate_graph(const GraphSpec& g);

bool is_connected(const Eigen::MatrixXd& weights);

Eigen::MatrixXd laplacian(const GraphSpec& g);

SpectralBasis spectral_decomposition(const Eigen::MatrixXd& l);

}  // namespace gssdc
