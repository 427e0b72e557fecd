#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gssdc::oracles {

namespace {

double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double directional_row_scale(double r, double gamma, double lambda, double delta,
                             bool group_threshold) {
  const double lam = group_threshold ? lambda : 0.0;
  auto cost = [&](double t) {
    return lam * t + 0.5 * delta * t * t + (t - r) * (t - r) / (2.0 * gamma);
  };
  // Bracket on a dense grid first (the function is strictly convex, so this
  // only guards against a boundary minimum at t = 0).
  const double hi = r + 1.0;
  const int grid = 2000;
  double best_t = 0.0, best_f = cost(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double t = hi * i / grid;
    const double f = cost(t);
    if (f < best_f) {
      best_f = f;
      best_t = t;
    }
  }
  const double lo = std::max(0.0, best_t - hi / grid);
  const double up = std::min(hi, best_t + hi / grid);
  const double t = golden_min(cost, lo, up);
  return cost(0.0) <= cost(t) ? 0.0 : t;
}

Eigen::MatrixXd prox_f2_reference(const Eigen::MatrixXd& m, const VertexPartition& part,
                                  double gamma, double lambda, double delta) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  auto fill = [&](const std::vector<int>& rows, bool thresholded) {
    for (int i : rows) {
      const double r = m.row(i).norm();
      if (r == 0.0) continue;
      const double t = directional_row_scale(r, gamma, lambda, delta, thresholded);
      out.row(i) = (t / r) * m.row(i);
    }
  };
  fill(part.s_known, false);
  fill(part.undecided, true);
  // forbidden rows stay zero
  return out;
}

Eigen::MatrixXd prox_nuclear_reference(const Eigen::MatrixXd& m, double gamma) {
  // SVD rebuilt from the eigendecomposition of M^T M; left vectors from
  // u = M v / sigma. Components with sigma ~ 0 are dropped (their shrunk
  // singular value is 0 whenever gamma > 0; for gamma == 0 they contribute
  // nothing to the product either).
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.transpose() * m);
  const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  const double smax = std::sqrt(lam.maxCoeff());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double sigma = std::sqrt(lam(i));
    if (sigma <= 1e-12 * std::max(1.0, smax)) continue;
    const double shrunk = std::max(0.0, sigma - gamma);
    if (shrunk == 0.0) continue;
    const Eigen::VectorXd v = es.eigenvectors().col(i);
    const Eigen::VectorXd u = (m * v) / sigma;
    out += shrunk * u * v.transpose();
  }
  return out;
}

double topk_norm_objective(const Eigen::VectorXd& t, const Eigen::VectorXd& mu, double weight,
                           int k) {
  std::vector<double> v(t.data(), t.data() + t.size());
  std::sort(v.begin(), v.end(), std::greater<double>());
  double topk = 0.0;
  for (int i = 0; i < k; ++i) topk += v[i];
  return weight * topk + 0.5 * (t - mu).squaredNorm();
}

namespace {

// Subgradient optimality check for min weight*Omega_K(t) + 0.5||t-mu||^2,
// t >= 0: a valid g in the Omega_K subdifferential and a nonnegative
// complementary multiplier must absorb mu - t.
bool topk_kkt_holds(const Eigen::VectorXd& mu, double c, int k, const Eigen::VectorXd& t,
                    double tol) {
  const int n = static_cast<int>(mu.size());
  std::vector<double> sorted(t.data(), t.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  const double tau = sorted[k - 1];  // K-th largest value of t

  double g_fixed = 0.0;     // committed subgradient mass
  double tie_lo = 0.0;      // feasible extra mass from free tie entries
  double tie_hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const double ti = t(i);
    const double gi = (mu(i) - ti) / c;  // required when t_i > 0
    const bool above = ti > tau + tol;
    const bool tied = std::abs(ti - tau) <= tol;
    if (ti > tol) {  // interior in the nonnegativity constraint
      if (above) {
        if (std::abs(gi - 1.0) > tol) return false;
        g_fixed += 1.0;
      } else if (tied) {
        if (gi < -tol || gi > 1.0 + tol) return false;
        g_fixed += std::clamp(gi, 0.0, 1.0);
      } else {
        if (std::abs(gi) > tol) return false;
      }
    } else {  // t_i = 0: need valid g_i >= mu_i / c
      const double need = mu(i) / c;
      if (tied) {
        if (need > 1.0 + tol) return false;
        tie_lo += std::clamp(need, 0.0, 1.0);
        tie_hi += 1.0;
      } else {
        // strictly below the K-th largest: g_i must be 0
        if (need > tol) return false;
      }
    }
  }
  return g_fixed + tie_lo <= k + tol && k <= g_fixed + tie_hi + tol;
}

}  // namespace

Eigen::VectorXd topk_norm_prox_reference(const Eigen::VectorXd& mu, double weight, int k) {
  const int n = static_cast<int>(mu.size());
  if (k < 1 || k > n) throw std::invalid_argument("oracle: k out of range");
  if (weight == 0.0) return mu;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return mu(a) > mu(b); });

  const double kkt_tol = 1e-9 * std::max(1.0, mu.cwiseAbs().maxCoeff() + weight);
  Eigen::VectorXd best;
  double best_obj = std::numeric_limits<double>::infinity();

  auto consider = [&](const Eigen::VectorXd& cand) {
    if ((cand.array() < -kkt_tol).any()) return;
    Eigen::VectorXd t = cand.cwiseMax(0.0);
    if (!topk_kkt_holds(mu, weight, k, t, kkt_tol)) return;
    const double obj = topk_norm_objective(t, mu, weight, k);
    if (obj < best_obj) {
      best_obj = obj;
      best = t;
    }
  };

  // Structures over the sorted norms: a entries shrunk by the full weight,
  // then a tie group of size b at a common value (possibly clamped at 0),
  // then untouched entries.
  for (int a = 0; a <= k; ++a) {
    if (a == k) {
      Eigen::VectorXd t = mu;
      for (int i = 0; i < a; ++i) t(order[i]) -= weight;
      consider(t);
      continue;
    }
    for (int b = 1; a + b <= n; ++b) {
      double tie_sum = 0.0;
      for (int i = a; i < a + b; ++i) tie_sum += mu(order[i]);
      const double theta = (tie_sum - weight * (k - a)) / b;
      for (const double value : {theta, 0.0}) {
        Eigen::VectorXd t = mu;
        for (int i = 0; i < a; ++i) t(order[i]) -= weight;
        for (int i = a; i < a + b; ++i) t(order[i]) = value;
        consider(t);
      }
    }
  }

  if (best.size() == 0) throw std::runtime_error("oracle: no KKT point found");
  return best;
}

Eigen::MatrixXd prox_topk_rows_reference(const Eigen::MatrixXd& m, double weight, int k) {
  Eigen::VectorXd mu(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) mu(i) = m.row(i).norm();
  const Eigen::VectorXd t = topk_norm_prox_reference(mu, weight, k);
  Eigen::MatrixXd out = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (mu(i) > 0.0) out.row(i) *= t(i) / mu(i);
  return out;
}

Eigen::VectorXd topk_norm_prox_grid(const Eigen::VectorXd& mu, double weight, int k,
                                    int rounds) {
  const int n = static_cast<int>(mu.size());
  if (n < 1 || n > 3) throw std::invalid_argument("grid oracle: 1-3 dimensions only");

  const double reach = mu.cwiseAbs().maxCoeff() + weight + 1.0;
  Eigen::VectorXd center = Eigen::VectorXd::Constant(n, reach / 2.0);
  double window = reach;
  const int pts = 33;

  Eigen::VectorXd best = center;
  for (int r = 0; r < rounds; ++r) {
    const double h = window / (pts - 1);
    double best_obj = std::numeric_limits<double>::infinity();
    Eigen::VectorXd t(n), best_local(n);
    std::vector<int> idx(n, 0);
    for (;;) {
      for (int d = 0; d < n; ++d)
        t(d) = std::max(0.0, center(d) - window / 2.0 + idx[d] * h);
      const double obj = topk_norm_objective(t, mu, weight, k);
      if (obj < best_obj) {
        best_obj = obj;
        best_local = t;
      }
      int d = 0;
      while (d < n && ++idx[d] == pts) idx[d++] = 0;
      if (d == n) break;
    }
    best = best_local;
    center = best;
    // Window shrinks slowly enough to re-capture the optimum even along
    // kink directions, where the localization error scales like sqrt(h).
    window = std::max(6.0 * h, 2.0 * std::sqrt(h * reach));
  }
  return best;
}

}  // namespace gssdc::oracles
