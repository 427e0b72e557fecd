#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>

#include "gssdc/graph.hpp"

namespace gssdc {

// Scalar function of a Laplacian eigenvalue (subspace response, smoothing
// spectrum, or power spectrum depending on the prior).
using SpectralFn = std::function<double(double)>;

enum class PriorKind { subspace, smoothness, stochastic };

struct SubspacePrior {
  Eigen::MatrixXd generator;  // A, n x K; signals are x = A d
};

struct SmoothnessPrior {
  Eigen::MatrixXd op;  // smoothing operator L*, symmetric positive definite
};

struct StochasticPrior {
  Eigen::MatrixXd signal_cov;  // R_x
  Eigen::MatrixXd noise_cov;   // R_n (sample-domain, M x M or 0 x 0 for "fit later")
};

// A signal prior together with the matrix B that the operator-design
// objective maximizes the rank surrogate of (B*S). B is chosen per kind so
// that B^T B matches the quantity the recovery formula needs:
//   subspace    B = A^T                  (B^T B = A A^T)
//   smoothness  B = diag(1/F) U^T        (B^T B = (L*^T L*)^{-1})
//   stochastic  B = diag(sqrt(p)) U^T    (B^T B = R_x)
struct PriorModel {
  std::variant<SubspacePrior, SmoothnessPrior, StochasticPrior> detail;
  Eigen::MatrixXd b;

  PriorKind kind() const { return static_cast<PriorKind>(detail.index()); }
  const SubspacePrior& subspace() const;
  const SmoothnessPrior& smoothness() const;
  const StochasticPrior& stochastic() const;
};

std::string prior_tag(PriorKind kind);  // "sb" / "sm" / "st"
PriorKind prior_kind_from_tag(const std::string& tag);

// Bandlimited-style subspace prior: A = U diag-selects the response onto K
// coefficient columns with periodic support (entry (i,c) of the coefficient
// map is response(lambda_i) when i mod K == c). Errors if A is rank-deficient
// (sigma_K <= 1e-10).
PriorModel make_subspace_prior(const SpectralBasis& basis, int k, const SpectralFn& response);

// Smoothness prior with L* = U diag(F(lambda)) U^T; requires F > 0 everywhere.
PriorModel make_smoothness_prior(const SpectralBasis& basis, const SpectralFn& response);

// Graph-stationary stochastic prior with R_x = U diag(p(lambda)) U^T;
// requires p >= 0 and a symmetric PSD noise covariance.
PriorModel make_stochastic_prior(const SpectralBasis& basis, const SpectralFn& power,
                                 Eigen::MatrixXd noise_cov);

// Same, from an explicit covariance matrix (file-ingestion path); B is built
// from the eigendecomposition square root of R_x.
PriorModel make_stochastic_prior_from_cov(Eigen::MatrixXd signal_cov, Eigen::MatrixXd noise_cov);

struct SignalInstance {
  Eigen::VectorXd x;
  std::string prior_tag;
  std::uint64_t seed = 0;
};

// x = A d with d_i ~ Normal(coeff_mean, coeff_stddev^2); defaults (1, 1).
SignalInstance gen_pgs_signal(const PriorModel& prior, std::uint64_t seed,
                              double coeff_mean = 1.0, double coeff_stddev = 1.0);

// Zero-mean Gaussian with covariance U diag(p) U^T: x = U diag(sqrt(p)) w.
SignalInstance gen_gmrf_signal(const SpectralBasis& basis, const SpectralFn& power,
                               std::uint64_t seed);

// Adds iid Normal(0, variance) entries; variance 0 is the identity.
Eigen::VectorXd add_noise(const Eigen::VectorXd& c, double variance, std::uint64_t seed);

}  // namespace gssdc
