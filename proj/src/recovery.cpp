#include "gssdc/recovery.hpp"

#include <stdexcept>

#include "gssdc/proxops.hpp"

namespace gssdc {

Eigen::VectorXd sample(const SamplingOperator& op, const Eigen::VectorXd& x) {
  if (x.size() != op.s.rows())
    throw std::invalid_argument("sample: signal length does not match the operator");
  return op.s.transpose() * x;
}

namespace {

void check_sample_dim(const SamplingOperator& op, const Eigen::VectorXd& c) {
  if (c.size() != op.s.cols())
    throw std::invalid_argument("recover: sample length does not match the operator");
}

}  // namespace

Recovery recover_subspace(const SamplingOperator& op, const PriorModel& prior,
                          const Eigen::VectorXd& c) {
  check_sample_dim(op, c);
  const auto& a = prior.subspace().generator;
  if (a.rows() != op.s.rows())
    throw std::invalid_argument("recover: generator height does not match the operator");
  const Eigen::MatrixXd sta = op.s.transpose() * a;
  Recovery rec;
  rec.rank_warning = numerical_rank(sta) < a.cols();
  rec.x_hat = a * (pseudo_inverse(sta) * c);
  return rec;
}

Recovery recover_smoothness(const SamplingOperator& op, const PriorModel& prior,
                            const Eigen::VectorXd& c) {
  check_sample_dim(op, c);
  prior.smoothness();  // kind check
  // B^T B = (L*^T L*)^{-1} by construction, so the interpolator needs no
  // explicit inverse of the smoothing operator.
  const Eigen::MatrixXd w = prior.b.transpose() * (prior.b * op.s);
  const Eigen::MatrixXd stw = op.s.transpose() * w;
  Recovery rec;
  rec.rank_warning = numerical_rank(stw) < stw.cols();
  rec.x_hat = w * (pseudo_inverse(stw) * c);
  return rec;
}

Recovery recover_stochastic(const SamplingOperator& op, const PriorModel& prior,
                            const Eigen::VectorXd& c) {
  check_sample_dim(op, c);
  const auto& sp = prior.stochastic();
  const Eigen::MatrixXd rxs = sp.signal_cov * op.s;
  Eigen::MatrixXd gram = op.s.transpose() * rxs;
  if (sp.noise_cov.size() != 0) {
    if (sp.noise_cov.rows() != gram.rows())
      throw std::invalid_argument("recover: noise covariance does not match the sample count");
    gram += sp.noise_cov;
  }
  Recovery rec;
  rec.x_hat = rxs * (pseudo_inverse(gram) * c);
  return rec;
}

Recovery recover(const SamplingOperator& op, const PriorModel& prior, const Eigen::VectorXd& c) {
  switch (prior.kind()) {
    case PriorKind::subspace: return recover_subspace(op, prior, c);
    case PriorKind::smoothness: return recover_smoothness(op, prior, c);
    case PriorKind::stochastic: return recover_stochastic(op, prior, c);
  }
  throw std::invalid_argument("recover: bad prior kind");
}

}  // namespace gssdc
