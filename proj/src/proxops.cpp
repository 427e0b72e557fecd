#include "gssdc/proxops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gssdc/kernels.hpp"

namespace gssdc {

namespace {

// JacobiSVD is more accurate on small problems; BDCSVD scales better. The
// crossover matches Eigen's own guidance.
template <typename Action>
auto with_svd(const Eigen::MatrixXd& m, unsigned options, Action&& act) {
  if (std::min(m.rows(), m.cols()) <= 32) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, options);
    return act(svd);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, options);
  return act(svd);
}

Eigen::VectorXd row_norms(const Eigen::MatrixXd& m) {
  Eigen::VectorXd out(m.rows());
  kernels::row_sumsq(m.data(), static_cast<std::size_t>(m.rows()),
                     static_cast<std::size_t>(m.cols()), out.data());
  return out.cwiseSqrt();
}

void apply_row_factors(Eigen::MatrixXd& m, const Eigen::VectorXd& factors) {
  kernels::scale_rows(m.data(), static_cast<std::size_t>(m.rows()),
                      static_cast<std::size_t>(m.cols()), factors.data());
}

}  // namespace

Eigen::MatrixXd prox_f2(const Eigen::MatrixXd& m, const VertexPartition& part, double gamma,
                        double lambda, double delta) {
  if (m.rows() != part.n_vertices)
    throw std::invalid_argument("prox_f2: row count does not match the partition");
  if (gamma <= 0.0) throw std::invalid_argument("prox_f2: gamma must be positive");

  const Eigen::VectorXd mu = row_norms(m);
  const double tik = 1.0 / (1.0 + gamma * delta);

  Eigen::VectorXd factors = Eigen::VectorXd::Constant(m.rows(), tik);
  for (int i : part.undecided) {
    const double norm = mu(i);
    factors(i) = norm > gamma * lambda ? tik * (1.0 - gamma * lambda / norm) : 0.0;
  }
  for (int i : part.n_known) factors(i) = 0.0;

  Eigen::MatrixXd out = m;
  apply_row_factors(out, factors);
  // Forbidden rows must be exact (bitwise) zero, not a rounded product.
  for (int i : part.n_known) out.row(i).setZero();
  return out;
}

Eigen::MatrixXd prox_nuclear(const Eigen::MatrixXd& m, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("prox_nuclear: gamma must be nonnegative");
  return with_svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV, [&](auto& svd) {
    const Eigen::VectorXd s = (svd.singularValues().array() - gamma).max(0.0).matrix();
    return Eigen::MatrixXd(svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose());
  });
}

Eigen::VectorXd capped_simplex_projection(const Eigen::VectorXd& mu, double cap, int k) {
  const int n = static_cast<int>(mu.size());
  if (k < 0 || k > n) throw std::invalid_argument("capped simplex: k out of range");
  if (cap < 0.0) throw std::invalid_argument("capped simplex: cap must be nonnegative");
  if (k == 0 || cap == 0.0) return Eigen::VectorXd::Zero(n);
  if (k == n) return Eigen::VectorXd::Constant(n, cap);

  // w_i = clamp(mu_i - tau, 0, cap) with tau chosen so sum w = k*cap. The sum
  // as a function of tau is piecewise linear and nonincreasing with
  // breakpoints at mu_i and mu_i - cap; sweep the segments.
  const double target = static_cast<double>(k) * cap;
  struct Event {
    double tau;
    int slope_change;  // +1 entering the interior regime, -1 leaving it
  };
  std::vector<Event> events;
  events.reserve(2 * n);
  for (int i = 0; i < n; ++i) {
    events.push_back({mu(i) - cap, +1});
    events.push_back({mu(i), -1});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.tau < b.tau; });

  double tau = events.front().tau;
  double g = 0.0;  // sum at the current tau
  for (int i = 0; i < n; ++i) g += std::clamp(mu(i) - tau, 0.0, cap);

  double tau_star = std::numeric_limits<double>::quiet_NaN();
  int active = 0;  // components with 0 < mu_i - tau < cap
  if (g <= target) {
    tau_star = tau;  // target met at or before the first breakpoint (k = n handled above)
  } else {
    for (size_t e = 0; e < events.size(); ++e) {
      // advance to the next distinct breakpoint
      active += events[e].slope_change;
      if (e + 1 < events.size() && events[e + 1].tau == events[e].tau) continue;
      const double next_tau = e + 1 < events.size() ? events[e + 1].tau : events[e].tau;
      const double g_next = g - active * (next_tau - tau);
      if (g_next <= target || e + 1 == events.size()) {
        tau_star = active > 0 ? tau + (g - target) / active : next_tau;
        break;
      }
      tau = next_tau;
      g = g_next;
    }
  }

  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w(i) = std::clamp(mu(i) - tau_star, 0.0, cap);
  return w;
}

Eigen::MatrixXd prox_topk_rows(const Eigen::MatrixXd& m, double weight, int k) {
  if (k < 1 || k > m.rows()) throw std::invalid_argument("prox_topk_rows: K out of range");
  if (weight < 0.0) throw std::invalid_argument("prox_topk_rows: weight must be nonnegative");
  if (weight == 0.0) return m;

  const Eigen::VectorXd mu = row_norms(m);
  const Eigen::VectorXd w = capped_simplex_projection(mu, weight, k);

  Eigen::VectorXd factors(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double t = std::max(0.0, mu(i) - w(i));
    factors(i) = mu(i) > 0.0 ? t / mu(i) : 1.0;
  }
  Eigen::MatrixXd out = m;
  apply_row_factors(out, factors);
  return out;
}

Eigen::MatrixXd prox_topk_rows_ksearch(const Eigen::MatrixXd& m, double weight, int k) {
  if (k < 1 || k > m.rows()) throw std::invalid_argument("prox_topk_rows: K out of range");
  if (weight < 0.0) throw std::invalid_argument("prox_topk_rows: weight must be nonnegative");
  if (weight == 0.0) return m;

  const Eigen::VectorXd mu = row_norms(m);
  Eigen::VectorXd sorted = mu;
  std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());

  // Largest k* in {1..K} whose leading partial mean, shifted by the weight,
  // stays below the k*-th norm; no such k* means the input is returned as is.
  int k_star = 0;
  double shifted_mean = 0.0;
  double prefix = 0.0;
  for (int j = 1; j <= k; ++j) {
    prefix += sorted(j - 1);
    const double cand = (prefix - weight) / j;
    if (sorted(j - 1) > cand) {
      k_star = j;
      shifted_mean = cand;
    }
  }
  if (k_star == 0) return m;

  Eigen::VectorXd factors(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    factors(i) = mu(i) > 0.0 ? std::max(0.0, 1.0 - shifted_mean / mu(i)) : 1.0;
  Eigen::MatrixXd out = m;
  apply_row_factors(out, factors);
  return out;
}

DualBlock prox_h(const DualBlock& z, double tau, double lambda, int k) {
  DualBlock out;
  out.z1 = prox_nuclear(z.z1, tau);
  out.z2 = k > 0 ? prox_topk_rows(z.z2, tau * lambda, k) : z.z2;
  return out;
}

DualBlock prox_h_conj(const DualBlock& z, double gamma, double lambda, int k) {
  if (gamma <= 0.0) throw std::invalid_argument("prox_h_conj: gamma must be positive");
  DualBlock scaled{z.z1 / gamma, z.z2 / gamma};
  const DualBlock inner = prox_h(scaled, 1.0 / gamma, lambda, k);
  return DualBlock{z.z1 - gamma * inner.z1, z.z2 - gamma * inner.z2};
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m) {
  return with_svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV, [&](auto& svd) {
    const auto& s = svd.singularValues();
    const double cutoff =
        std::max(m.rows(), m.cols()) * std::numeric_limits<double>::epsilon() *
        (s.size() ? s(0) : 0.0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > cutoff) inv(i) = 1.0 / s(i);
    return Eigen::MatrixXd(svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose());
  });
}

int numerical_rank(const Eigen::MatrixXd& m) {
  return with_svd(m, 0u, [&](auto& svd) {
    const auto& s = svd.singularValues();
    const double cutoff =
        std::max(m.rows(), m.cols()) * std::numeric_limits<double>::epsilon() *
        (s.size() ? s(0) : 0.0);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > cutoff) ++r;
    return r;
  });
}

double sigma_min(const Eigen::MatrixXd& m) {
  return with_svd(m, 0u, [&](auto& svd) {
    const auto& s = svd.singularValues();
    return s.size() ? s(s.size() - 1) : 0.0;
  });
}

}  // namespace gssdc
