#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gssdc/graph.hpp"
#include "gssdc/priors.hpp"
#include "gssdc/random.hpp"
#include "gssdc/recovery.hpp"

using namespace gssdc;

namespace {

Eigen::MatrixXd random_matrix(RandomStream& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

SamplingOperator plain_operator(Eigen::MatrixXd s) {
  SamplingOperator op;
  const int n = static_cast<int>(s.rows());
  op.s = std::move(s);
  op.partition.n_vertices = n;
  op.partition.undecided.resize(n);
  for (int i = 0; i < n; ++i) op.partition.undecided[i] = i;
  op.partition.z = static_cast<int>(op.s.cols());
  return op;
}

}  // namespace

TEST_CASE("sampling applies the operator transpose") {
  RandomStream rng(split_seed(1101, 0));
  const SamplingOperator op = plain_operator(random_matrix(rng, 5, 2));
  const Eigen::VectorXd x = random_matrix(rng, 5, 1);
  const Eigen::VectorXd c = sample(op, x);
  CHECK((c - op.s.transpose() * x).norm() == 0.0);

  const Eigen::VectorXd wrong = random_matrix(rng, 4, 1);
  CHECK_THROWS_AS(sample(op, wrong), std::invalid_argument);
}

TEST_CASE("subspace recovery is exact on tiny closed-form data") {
  PriorModel prior;
  SubspacePrior sub;
  sub.generator = Eigen::MatrixXd::Ones(3, 1);
  prior.b = sub.generator.transpose();
  prior.detail = std::move(sub);

  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(3, 1);
  s(0, 0) = 1.0;  // sample vertex 0 only
  const SamplingOperator op = plain_operator(std::move(s));

  const Eigen::VectorXd x = 2.0 * Eigen::VectorXd::Ones(3);
  const Recovery rec = recover_subspace(op, prior, sample(op, x));
  CHECK(!rec.rank_warning);
  CHECK((rec.x_hat - x).norm() <= 1e-14);
}

TEST_CASE("subspace recovery inverts any full-rank sampling") {
  RandomStream rng(split_seed(1102, 0));
  const int n = 10, k = 3, m = 5;
  const Eigen::MatrixXd a = random_matrix(rng, n, k);
  PriorModel prior;
  SubspacePrior sub;
  sub.generator = a;
  prior.b = a.transpose();
  prior.detail = std::move(sub);

  const SamplingOperator op = plain_operator(random_matrix(rng, n, m));
  const Eigen::VectorXd x = a * random_matrix(rng, k, 1);
  const Recovery rec = recover(op, prior, sample(op, x));
  CHECK(!rec.rank_warning);
  CHECK((rec.x_hat - x).norm() <= 1e-9 * x.norm());
}

TEST_CASE("subspace recovery warns when the sampled generator loses rank") {
  RandomStream rng(split_seed(1103, 0));
  const int n = 8, k = 3;
  const Eigen::MatrixXd a = random_matrix(rng, n, k);
  PriorModel prior;
  SubspacePrior sub;
  sub.generator = a;
  prior.b = a.transpose();
  prior.detail = std::move(sub);

  const SamplingOperator op = plain_operator(random_matrix(rng, n, 2));  // m < K
  const Eigen::VectorXd x = a * random_matrix(rng, k, 1);
  const Recovery rec = recover_subspace(op, prior, sample(op, x));
  CHECK(rec.rank_warning);
}

TEST_CASE("smoothness recovery projects onto the sampled subspace when L* = I") {
  const GraphSpec g = build_knn_sensor_graph(12, 3, split_seed(1104, 0));
  const SpectralBasis basis = spectral_decomposition(laplacian(g));
  const PriorModel prior = make_smoothness_prior(basis, [](double) { return 1.0; });

  RandomStream rng(split_seed(1104, 1));
  const Eigen::MatrixXd s = random_matrix(rng, 12, 4);
  const SamplingOperator op = plain_operator(s);

  // x inside the column span of S is reproduced exactly by the projector.
  const Eigen::VectorXd x = s * random_matrix(rng, 4, 1);
  const Recovery rec = recover(op, prior, sample(op, x));
  CHECK(!rec.rank_warning);
  CHECK((rec.x_hat - x).norm() <= 1e-8 * x.norm());

  // And a generic signal lands on the projection.
  const Eigen::VectorXd y = random_matrix(rng, 12, 1);
  const Eigen::MatrixXd proj =
      s * (s.transpose() * s).ldlt().solve(s.transpose() * y);
  const Recovery recy = recover_smoothness(op, prior, sample(op, y));
  CHECK((recy.x_hat - proj).norm() <= 1e-8 * y.norm());
}

TEST_CASE("smoothness recovery handles a nontrivial spectrum") {
  const GraphSpec g = build_knn_sensor_graph(14, 3, split_seed(1105, 0));
  const SpectralBasis basis = spectral_decomposition(laplacian(g));
  const PriorModel prior =
      make_smoothness_prior(basis, [](double l) { return 0.3 + l; });

  RandomStream rng(split_seed(1105, 1));
  const Eigen::MatrixXd s = random_matrix(rng, 14, 5);
  const SamplingOperator op = plain_operator(s);

  // Signals of the form W alpha with W = B^T B S are recovered exactly.
  const Eigen::MatrixXd w = prior.b.transpose() * (prior.b * s);
  const Eigen::VectorXd x = w * random_matrix(rng, 5, 1);
  const Recovery rec = recover_smoothness(op, prior, sample(op, x));
  CHECK(!rec.rank_warning);
  CHECK((rec.x_hat - x).norm() <= 1e-7 * x.norm());
}

TEST_CASE("stochastic recovery shrinks with growing noise covariance") {
  const GraphSpec g = build_knn_sensor_graph(12, 3, split_seed(1106, 0));
  const SpectralBasis basis = spectral_decomposition(laplacian(g));
  auto p = [](double l) { return 1.0 / (1.0 + l); };

  RandomStream rng(split_seed(1106, 1));
  const Eigen::MatrixXd s = random_matrix(rng, 12, 4);
  const SamplingOperator op = plain_operator(s);
  const Eigen::VectorXd x = gen_gmrf_signal(basis, p, split_seed(1106, 2)).x;
  const Eigen::VectorXd c = sample(op, x);

  double prev_norm = std::numeric_limits<double>::infinity();
  for (double sigma2 : {0.0, 1.0, 100.0}) {
    Eigen::MatrixXd rn;
    if (sigma2 > 0.0) rn = sigma2 * Eigen::MatrixXd::Identity(4, 4);
    const PriorModel prior = make_stochastic_prior(basis, p, rn);
    const Recovery rec = recover(op, prior, c);
    CHECK(!rec.rank_warning);
    CHECK(rec.x_hat.norm() < prev_norm);
    prev_norm = rec.x_hat.norm();
  }
}

TEST_CASE("stochastic recovery with zero noise inverts in-span signals") {
  const GraphSpec g = build_knn_sensor_graph(10, 3, split_seed(1107, 0));
  const SpectralBasis basis = spectral_decomposition(laplacian(g));
  auto p = [](double l) { return 2.0 / (0.5 + l); };  // full-support spectrum
  const PriorModel prior = make_stochastic_prior(basis, p, Eigen::MatrixXd());

  RandomStream rng(split_seed(1107, 1));
  const Eigen::MatrixXd s = random_matrix(rng, 10, 10);  // square, full rank
  const SamplingOperator op = plain_operator(s);
  const Eigen::VectorXd x = gen_gmrf_signal(basis, p, split_seed(1107, 2)).x;
  const Recovery rec = recover_stochastic(op, prior, sample(op, x));
  CHECK((rec.x_hat - x).norm() <= 1e-7 * x.norm());
}

TEST_CASE("stochastic recovery rejects a mismatched noise covariance") {
  const GraphSpec g = build_knn_sensor_graph(10, 3, split_seed(1108, 0));
  const SpectralBasis basis = spectral_decomposition(laplacian(g));
  auto p = [](double l) { return 1.0 / (1.0 + l); };
  const PriorModel prior =
      make_stochastic_prior(basis, p, Eigen::MatrixXd::Identity(3, 3));

  RandomStream rng(split_seed(1108, 1));
  const SamplingOperator op = plain_operator(random_matrix(rng, 10, 4));  // M = 4 != 3
  const Eigen::VectorXd x = random_matrix(rng, 10, 1);
  CHECK_THROWS_AS(recover_stochastic(op, prior, sample(op, x)), std::invalid_argument);
}

TEST_CASE("the dispatcher matches the per-prior entry points") {
  const GraphSpec g = build_knn_sensor_graph(10, 3, split_seed(1109, 0));
  const SpectralBasis basis = spectral_decomposition(laplacian(g));
  RandomStream rng(split_seed(1109, 1));
  const SamplingOperator op = plain_operator(random_matrix(rng, 10, 4));
  const Eigen::VectorXd x = random_matrix(rng, 10, 1);
  const Eigen::VectorXd c = sample(op, x);

  const PriorModel sb = make_subspace_prior(basis, 4, [](double l) { return std::exp(-l); });
  CHECK((recover(op, sb, c).x_hat - recover_subspace(op, sb, c).x_hat).norm() == 0.0);

  const PriorModel sm = make_smoothness_prior(basis, [](double l) { return 1.0 + l; });
  CHECK((recover(op, sm, c).x_hat - recover_smoothness(op, sm, c).x_hat).norm() == 0.0);

  const PriorModel st =
      make_stochastic_prior(basis, [](double l) { return 1.0 / (1.0 + l); }, Eigen::MatrixXd());
  CHECK((recover(op, st, c).x_hat - recover_stochastic(op, st, c).x_hat).norm() == 0.0);
}
