#include "gssdc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gssdc/random.hpp"

namespace gssdc {

namespace {

GraphSpec try_sensor_draw(int n, int k, std::uint64_t seed, double theta_override) {
  RandomStream rng(seed);
  std::vector<double> px(n), py(n);
  for (int i = 0; i < n; ++i) {
    px[i] = rng.uniform01();
    py[i] = rng.uniform01();
  }

  // k nearest neighbours per vertex; ties broken by index so the draw is a
  // pure function of the seed.
  std::vector<std::vector<int>> nbrs(n);
  std::vector<std::pair<double, int>> cand;
  double dist_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    cand.clear();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dx = px[i] - px[j], dy = py[i] - py[j];
      cand.emplace_back(std::sqrt(dx * dx + dy * dy), j);
    }
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    nbrs[i].reserve(k);
    for (int t = 0; t < k; ++t) {
      nbrs[i].push_back(cand[t].second);
      dist_sum += cand[t].first;
    }
  }

  const double theta = theta_override > 0.0 ? theta_override
                                            : dist_sum / (static_cast<double>(n) * k);

  GraphSpec g;
  g.n_vertices = n;
  g.weights = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j : nbrs[i]) {
      const double dx = px[i] - px[j], dy = py[i] - py[j];
      const double d2 = dx * dx + dy * dy;
      const double w = std::exp(-d2 / (2.0 * theta * theta));
      g.weights(i, j) = std::max(g.weights(i, j), w);
      g.weights(j, i) = g.weights(i, j);
    }
  }
  return g;
}

}  // namespace

GraphSpec build_knn_sensor_graph(int n, int k, std::uint64_t seed,
                                 const SensorGraphOptions& opts) {
  if (n < 2) throw std::invalid_argument("sensor graph: need n >= 2");
  if (k < 1 || k >= n)
    throw std::invalid_argument("sensor graph: need 1 <= k < n (k=" + std::to_string(k) +
                                ", n=" + std::to_string(n) + ")");
  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    GraphSpec g = try_sensor_draw(n, k, split_seed(seed, static_cast<std::uint64_t>(attempt)),
                                  opts.theta);
    if (is_connected(g.weights)) return g;
  }
  throw std::runtime_error("sensor graph: disconnected after " +
                           std::to_string(opts.max_retries + 1) + " draws (seed " +
                           std::to_string(seed) + ")");
}

void validate_graph(const GraphSpec& g) {
  const auto& w = g.weights;
  if (g.n_vertices != w.rows() || w.rows() != w.cols())
    throw std::invalid_argument("graph: weight matrix must be square n_vertices x n_vertices");
  if (!w.allFinite()) throw std::invalid_argument("graph: non-finite weight");
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    if (w(i, i) != 0.0) throw std::invalid_argument("graph: nonzero diagonal");
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      if (w(i, j) < 0.0) throw std::invalid_argument("graph: negative weight");
      if (std::abs(w(i, j) - w(j, i)) > 1e-12)
        throw std::invalid_argument("graph: weight matrix not symmetric");
    }
  }
}

bool is_connected(const Eigen::MatrixXd& weights) {
  const Eigen::Index n = weights.rows();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<Eigen::Index> stack{0};
  seen[0] = 1;
  Eigen::Index count = 1;
  while (!stack.empty()) {
    const Eigen::Index u = stack.back();
    stack.pop_back();
    for (Eigen::Index v = 0; v < n; ++v) {
      if (!seen[v] && weights(u, v) != 0.0) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

Eigen::MatrixXd laplacian(const GraphSpec& g) {
  Eigen::MatrixXd l = -g.weights;
  l.diagonal() = g.weights.rowwise().sum();
  return l;
}

SpectralBasis spectral_decomposition(const Eigen::MatrixXd& l) {
  if (l.rows() != l.cols()) throw std::invalid_argument("spectral: matrix must be square");
  const double asym = (l - l.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10)
    throw std::invalid_argument("spectral: matrix not symmetric (max asymmetry " +
                                std::to_string(asym) + ")");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (l + l.transpose()));
  if (es.info() != Eigen::Success) throw std::runtime_error("spectral: eigensolver failed");

  SpectralBasis basis;
  basis.eigenvalues = es.eigenvalues();
  basis.eigenvectors = es.eigenvectors();
  for (Eigen::Index i = 0; i < basis.eigenvalues.size(); ++i)
    if (basis.eigenvalues(i) < 1e-12) basis.eigenvalues(i) = 0.0;

  // Sign convention: the first largest-magnitude entry of each vector positive.
  for (Eigen::Index c = 0; c < basis.eigenvectors.cols(); ++c) {
    Eigen::Index arg = 0;
    double best = std::abs(basis.eigenvectors(0, c));
    for (Eigen::Index r = 1; r < basis.eigenvectors.rows(); ++r) {
      const double a = std::abs(basis.eigenvectors(r, c));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if (basis.eigenvectors(arg, c) < 0.0) basis.eigenvectors.col(c) = -basis.eigenvectors.col(c);
  }
  return basis;
}

}  // namespace gssdc
