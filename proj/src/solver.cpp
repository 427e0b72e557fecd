#include "gssdc/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "gssdc/kernels.hpp"
#include "gssdc/matrix_io.hpp"
#include "gssdc/proxops.hpp"
#include "gssdc/random.hpp"

namespace gssdc {

void SolverConfig::validate() const {
  if (lambda < 0.0) throw std::invalid_argument("solver: lambda must be nonnegative");
  if (delta < 0.0) throw std::invalid_argument("solver: delta must be nonnegative");
  if (gamma1_0 <= 0.0 || gamma2_0 <= 0.0)
    throw std::invalid_argument("solver: step sizes must be positive");
  if (decay <= 0.0 || decay > 1.0)
    throw std::invalid_argument("solver: decay must be in (0, 1]");
  if (tol <= 0.0) throw std::invalid_argument("solver: tol must be positive");
  if (max_iters < 1) throw std::invalid_argument("solver: max_iters must be positive");
}

namespace {

Eigen::VectorXd undecided_row_norms(const Eigen::MatrixXd& s, const VertexPartition& part) {
  Eigen::VectorXd all(s.rows());
  kernels::row_sumsq(s.data(), static_cast<std::size_t>(s.rows()),
                     static_cast<std::size_t>(s.cols()), all.data());
  Eigen::VectorXd u(part.undecided.size());
  for (size_t r = 0; r < part.undecided.size(); ++r) u(r) = std::sqrt(all(part.undecided[r]));
  return u;
}

bool rows_bitwise_zero(const Eigen::MatrixXd& s, const std::vector<int>& rows) {
  for (int i : rows)
    for (Eigen::Index j = 0; j < s.cols(); ++j)
      if (std::bit_cast<std::uint64_t>(s(i, j)) != 0) return false;
  return true;
}

}  // namespace

double objective_value(const Eigen::MatrixXd& s, const Eigen::MatrixXd& b,
                       const VertexPartition& part, double lambda, double delta) {
  if (s.rows() != part.n_vertices || b.cols() != s.rows())
    throw std::invalid_argument("objective: dimension mismatch");
  for (int i : part.n_known)
    if (s.row(i).cwiseAbs().maxCoeff() != 0.0)
      return std::numeric_limits<double>::infinity();

  Eigen::VectorXd u_norms = undecided_row_norms(s, part);
  const double group_sum = u_norms.sum();

  const int kp = part.k_prime();
  double topk_sum = 0.0;
  if (kp > 0) {
    std::sort(u_norms.data(), u_norms.data() + u_norms.size(), std::greater<double>());
    topk_sum = u_norms.head(kp).sum();
  }

  const double frob2 =
      kernels::sumsq(s.data(), static_cast<std::size_t>(s.size()));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b * s);
  const double nuclear = svd.singularValues().sum();

  return lambda * group_sum + 0.5 * delta * frob2 - nuclear - lambda * topk_sum;
}

std::pair<SamplingOperator, SolverTrace> design_sampling_operator(const Eigen::MatrixXd& b,
                                                                  const VertexPartition& part,
                                                                  int m_samples,
                                                                  const SolverConfig& cfg) {
  cfg.validate();
  part.validate();
  if (b.cols() != part.n_vertices)
    throw std::invalid_argument("solver: B column count does not match the partition");
  if (m_samples < 1) throw std::invalid_argument("solver: need at least one sample column");

  const int n = part.n_vertices;
  const int m = m_samples;
  const int kp = part.k_prime();
  const int nu = static_cast<int>(part.undecided.size());

  // Gaussian start with forbidden rows already pinned.
  RandomStream rng(cfg.seed);
  Eigen::MatrixXd s(n, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < n; ++i) s(i, j) = rng.normal();
  for (int i : part.n_known) s.row(i).setZero();

  auto gather_undecided = [&](const Eigen::MatrixXd& from, Eigen::MatrixXd& to) {
    for (int r = 0; r < nu; ++r) to.row(r) = from.row(part.undecided[r]);
  };

  // Z = L S with L = [B; undecided-row selector].
  DualBlock z;
  z.z1.noalias() = b * s;
  z.z2.resize(nu, m);
  gather_undecided(s, z.z2);

  SolverTrace trace;
  trace.objective_values.reserve(1024);

  double gamma1 = cfg.gamma1_0;
  double gamma2 = cfg.gamma2_0;

  Eigen::MatrixXd grad(n, m), arg(n, m), s_next(n, m), bs(b.rows(), m), w2(nu, m);

  const auto n_elems = static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    // Primal: S <- prox_{gamma1 f2}(S + gamma1 L^T Z).
    grad.noalias() = b.transpose() * z.z1;
    for (int r = 0; r < nu; ++r) grad.row(part.undecided[r]) += z.z2.row(r);
    arg = s;
    kernels::add_scaled(arg.data(), grad.data(), gamma1, n_elems);
    s_next = prox_f2(arg, part, gamma1, cfg.lambda, cfg.delta);

    if (!rows_bitwise_zero(s_next, part.n_known)) trace.forbidden_rows_clean = false;

    // Dual: Z <- prox_{gamma2 h*}(Z + gamma2 L S).
    bs.noalias() = b * s_next;
    DualBlock w{z.z1, z.z2};
    kernels::add_scaled(w.z1.data(), bs.data(), gamma2,
                        static_cast<std::size_t>(bs.size()));
    gather_undecided(s_next, w2);
    kernels::add_scaled(w.z2.data(), w2.data(), gamma2,
                        static_cast<std::size_t>(w2.size()));
    z = prox_h_conj(w, gamma2, cfg.lambda, kp);

    if (!s_next.allFinite() || !z.z1.allFinite() || !z.z2.allFinite())
      throw std::runtime_error("solver: non-finite iterate at iteration " +
                               std::to_string(iter) + " (gamma1 " + format_value(gamma1) +
                               ", gamma2 " + format_value(gamma2) + ")");

    const double prev_sq = kernels::sumsq(s.data(), n_elems);
    const double diff_sq = kernels::sumsq_diff(s_next.data(), s.data(), n_elems);
    s.swap(s_next);

    trace.gamma1_values.push_back(gamma1);
    trace.gamma2_values.push_back(gamma2);
    trace.objective_values.push_back(objective_value(s, b, part, cfg.lambda, cfg.delta));
    trace.iterations = iter;

    if (prev_sq == 0.0) {
      // Degenerate fixed point: nothing left to shrink.
      trace.rel_changes.push_back(0.0);
      trace.converged = true;
      trace.zero_iterate_stop = true;
      break;
    }
    const double rel = std::sqrt(diff_sq / prev_sq);
    trace.rel_changes.push_back(rel);
    if (rel <= cfg.tol) {
      trace.converged = true;
      break;
    }

    gamma1 *= cfg.decay;
    gamma2 *= cfg.decay;
  }

  trace.final_sigma_min = sigma_min(b * s);

  SamplingOperator op;
  op.s = std::move(s);
  op.partition = part;
  return {std::move(op), std::move(trace)};
}

void save_trace_csv(const std::string& path, const SolverTrace& trace) {
  std::string out = "iter,objective,rel_change,gamma1,gamma2\n";
  for (int i = 0; i < trace.iterations; ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += format_value(trace.objective_values[i]);
    out += ',';
    out += format_value(trace.rel_changes[i]);
    out += ',';
    out += format_value(trace.gamma1_values[i]);
    out += ',';
    out += format_value(trace.gamma2_values[i]);
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace gssdc
