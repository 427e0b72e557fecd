#include "gssdc/priors.hpp"

#include <cmath>
#include <stdexcept>

#include "gssdc/random.hpp"

namespace gssdc {

const SubspacePrior& PriorModel::subspace() const {
  if (kind() != PriorKind::subspace) throw std::invalid_argument("prior: not a subspace prior");
  return std::get<SubspacePrior>(detail);
}

const SmoothnessPrior& PriorModel::smoothness() const {
  if (kind() != PriorKind::smoothness)
    throw std::invalid_argument("prior: not a smoothness prior");
  return std::get<SmoothnessPrior>(detail);
}

const StochasticPrior& PriorModel::stochastic() const {
  if (kind() != PriorKind::stochastic)
    throw std::invalid_argument("prior: not a stochastic prior");
  return std::get<StochasticPrior>(detail);
}

std::string prior_tag(PriorKind kind) {
  switch (kind) {
    case PriorKind::subspace: return "sb";
    case PriorKind::smoothness: return "sm";
    case PriorKind::stochastic: return "st";
  }
  throw std::invalid_argument("prior: bad kind");
}

PriorKind prior_kind_from_tag(const std::string& tag) {
  if (tag == "sb") return PriorKind::subspace;
  if (tag == "sm") return PriorKind::smoothness;
  if (tag == "st") return PriorKind::stochastic;
  throw std::invalid_argument("prior: unknown tag '" + tag + "' (want sb|sm|st)");
}

namespace {

Eigen::VectorXd eval_spectrum(const SpectralBasis& basis, const SpectralFn& fn) {
  Eigen::VectorXd v(basis.eigenvalues.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = fn(basis.eigenvalues(i));
  if (!v.allFinite()) throw std::invalid_argument("prior: spectral function not finite");
  return v;
}

void check_noise_cov(const Eigen::MatrixXd& rn) {
  if (rn.size() == 0) return;
  if (rn.rows() != rn.cols()) throw std::invalid_argument("prior: noise covariance not square");
  if ((rn - rn.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("prior: noise covariance not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rn, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("prior: noise covariance not positive semidefinite");
}

}  // namespace

PriorModel make_subspace_prior(const SpectralBasis& basis, int k, const SpectralFn& response) {
  const Eigen::Index n = basis.eigenvalues.size();
  if (k < 1 || k > n) throw std::invalid_argument("subspace prior: need 1 <= K <= n");
  const Eigen::VectorXd resp = eval_spectrum(basis, response);

  // Coefficient map with periodic support: column c picks up the rows
  // i = c, c+K, c+2K, ... weighted by the response.
  Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(n, k);
  for (Eigen::Index i = 0; i < n; ++i) coeff(i, i % k) = resp(i);

  PriorModel prior;
  SubspacePrior sp;
  sp.generator = basis.eigenvectors * coeff;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sp.generator);
  if (svd.singularValues()(k - 1) <= 1e-10)
    throw std::invalid_argument("subspace prior: generator is rank-deficient");

  prior.b = sp.generator.transpose();
  prior.detail = std::move(sp);
  return prior;
}

PriorModel make_smoothness_prior(const SpectralBasis& basis, const SpectralFn& response) {
  const Eigen::VectorXd f = eval_spectrum(basis, response);
  if (f.minCoeff() <= 0.0)
    throw std::invalid_argument("smoothness prior: spectrum must be strictly positive");

  PriorModel prior;
  SmoothnessPrior sp;
  sp.op = basis.eigenvectors * f.asDiagonal() * basis.eigenvectors.transpose();
  prior.b = f.cwiseInverse().asDiagonal() * basis.eigenvectors.transpose();
  prior.detail = std::move(sp);
  return prior;
}

PriorModel make_stochastic_prior(const SpectralBasis& basis, const SpectralFn& power,
                                 Eigen::MatrixXd noise_cov) {
  const Eigen::VectorXd p = eval_spectrum(basis, power);
  if (p.minCoeff() < 0.0)
    throw std::invalid_argument("stochastic prior: power spectrum must be nonnegative");
  check_noise_cov(noise_cov);

  PriorModel prior;
  StochasticPrior sp;
  sp.signal_cov = basis.eigenvectors * p.asDiagonal() * basis.eigenvectors.transpose();
  sp.noise_cov = std::move(noise_cov);
  prior.b = p.cwiseSqrt().asDiagonal() * basis.eigenvectors.transpose();
  prior.detail = std::move(sp);
  return prior;
}

PriorModel make_stochastic_prior_from_cov(Eigen::MatrixXd signal_cov,
                                          Eigen::MatrixXd noise_cov) {
  if (signal_cov.rows() != signal_cov.cols())
    throw std::invalid_argument("stochastic prior: covariance not square");
  if ((signal_cov - signal_cov.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("stochastic prior: covariance not symmetric");
  check_noise_cov(noise_cov);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(signal_cov);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("stochastic prior: eigensolver failed");
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("stochastic prior: covariance not positive semidefinite");

  PriorModel prior;
  StochasticPrior sp;
  prior.b = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  sp.signal_cov = std::move(signal_cov);
  sp.noise_cov = std::move(noise_cov);
  prior.detail = std::move(sp);
  return prior;
}

SignalInstance gen_pgs_signal(const PriorModel& prior, std::uint64_t seed, double coeff_mean,
                              double coeff_stddev) {
  const auto& a = prior.subspace().generator;
  RandomStream rng(seed);
  Eigen::VectorXd d(a.cols());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = rng.normal(coeff_mean, coeff_stddev);
  return SignalInstance{a * d, prior_tag(PriorKind::subspace), seed};
}

SignalInstance gen_gmrf_signal(const SpectralBasis& basis, const SpectralFn& power,
                               std::uint64_t seed) {
  const Eigen::VectorXd p = eval_spectrum(basis, power);
  if (p.minCoeff() < 0.0)
    throw std::invalid_argument("gmrf signal: power spectrum must be nonnegative");
  RandomStream rng(seed);
  Eigen::VectorXd w(p.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = rng.normal();
  return SignalInstance{basis.eigenvectors * (p.cwiseSqrt().asDiagonal() * w),
                        prior_tag(PriorKind::stochastic), seed};
}

Eigen::VectorXd add_noise(const Eigen::VectorXd& c, double variance, std::uint64_t seed) {
  if (variance < 0.0) throw std::invalid_argument("add_noise: variance must be nonnegative");
  if (variance == 0.0) return c;
  RandomStream rng(seed);
  const double sd = std::sqrt(variance);
  Eigen::VectorXd out(c.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = c(i) + sd * rng.normal();
  return out;
}

}  // namespace gssdc
