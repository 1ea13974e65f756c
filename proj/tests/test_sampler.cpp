#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "dcsbm/sampler.hpp"

using namespace dcsbm;

namespace {

ModelParams homogeneous(int n, double lambda) {
  ModelParams p;
  p.pi = Eigen::VectorXd::Ones(1);
  p.lambda_tilde = Eigen::MatrixXd::Constant(1, 1, lambda);
  p.weights = Eigen::VectorXd::Ones(n);
  return p;
}

}  // namespace

TEST_SUITE("sampler") {

TEST_CASE("substream seeds are distinct and stable") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t root = 0; root < 4; ++root) {
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(substream_seed(root, i));
  }
  CHECK(seen.size() == 4000);
  CHECK(substream_seed(7, 3) == substream_seed(7, 3));
}

TEST_CASE("dirichlet draws lie in the open simplex") {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const Eigen::VectorXd d = sample_dirichlet(1 + t % 6, 0.5, rng);
    CHECK(d.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.minCoeff() > 0.0);
  }
  CHECK(sample_dirichlet(1, 0.5, rng)(0) == 1.0);
}

TEST_CASE("sample_params: k0 = 1 and singleton weights") {
  GeneratorConfig cfg;
  cfg.n = 12;
  cfg.k0 = 1;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    const auto [p, z] = sample_params(cfg, rng);
    CHECK(p.pi.size() == 1);
    CHECK(p.pi(0) == 1.0);
    CHECK(validate_params(p, z));
  }

  cfg.n = 3;
  cfg.k0 = 6;
  int singletons = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(s);
    const auto [p, z] = sample_params(cfg, rng);
    CHECK(validate_params(p, z));
    for (int i = 0; i < z.size(); ++i) {
      int size = 0;
      for (int j = 0; j < z.size(); ++j) size += z[j] == z[i] ? 1 : 0;
      if (size == 1) {
        ++singletons;
        CHECK(p.weights(i) == 1.0);
      }
    }
  }
  CHECK(singletons > 0);
}

TEST_CASE("sample_params is deterministic per seed") {
  GeneratorConfig cfg;
  cfg.n = 30;
  cfg.k0 = 3;
  Rng a(42);
  Rng b(42);
  const auto pa = sample_params(cfg, a);
  const auto pb = sample_params(cfg, b);
  CHECK(pa.first.pi == pb.first.pi);
  CHECK(pa.first.lambda_tilde == pb.first.lambda_tilde);
  CHECK(pa.first.weights == pb.first.weights);
  CHECK(pa.second == pb.second);
  CHECK(pa.first.lambda_tilde == pa.first.lambda_tilde.transpose());
}

TEST_CASE("sample_labels") {
  Rng rng(9);
  CHECK(sample_labels(Eigen::VectorXd::Ones(1), 5, rng) == Labels({0, 0, 0, 0, 0}, 1));

  const int n = 100000;
  const Labels z = sample_labels(Eigen::Vector2d(0.5, 0.5), n, rng);
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += z[i];
  const double freq = static_cast<double>(ones) / n;
  CHECK(std::abs(freq - 0.5) <= 3.0 * std::sqrt(0.25 / n));

  Rng r1(5);
  Rng r2(5);
  CHECK(sample_labels(Eigen::Vector3d(0.2, 0.3, 0.5), 50, r1) ==
        sample_labels(Eigen::Vector3d(0.2, 0.3, 0.5), 50, r2));
}

TEST_CASE("sample_network: vanishing rate gives the empty graph") {
  Rng rng(3);
  ModelParams p = homogeneous(20, 1e-12);
  const Network x = sample_network(Labels::constant(20, 1), p, rng);
  CHECK(x.total() == 0);
}

TEST_CASE("sample_network: first moments for n = 2") {
  Rng rng(17);
  const ModelParams p = homogeneous(2, 1.0);
  const Labels z = Labels::constant(2, 1);
  const int draws = 200000;
  double off = 0.0;
  double diag = 0.0;
  for (int t = 0; t < draws; ++t) {
    const Network x = sample_network(z, p, rng);
    off += static_cast<double>(x(0, 1));
    diag += static_cast<double>(x(0, 0));
  }
  off /= draws;
  diag /= draws;
  // x_01 ~ Poisson(1); x_00 = 2 Poisson(1/2), variance 2.
  CHECK(std::abs(off - 1.0) <= 3.0 * std::sqrt(1.0 / draws));
  CHECK(std::abs(diag - 1.0) <= 3.0 * std::sqrt(2.0 / draws));
}

TEST_CASE("sample_network: degree-corrected pair means") {
  Rng rng(23);
  ModelParams p;
  p.pi = Eigen::Vector2d(0.5, 0.5);
  p.lambda_tilde.resize(2, 2);
  p.lambda_tilde << 2.0, 0.5, 0.5, 1.0;
  p.rho = 0.8;
  p.weights = Eigen::Vector4d(1.5, 0.5, 0.25, 1.75);
  const Labels z({0, 0, 1, 1}, 2);
  REQUIRE(validate_params(p, z));
  const int draws = 100000;
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(4, 4);
  for (int t = 0; t < draws; ++t) mean += sample_network(z, p, rng).counts().cast<double>();
  mean /= draws;
  const Eigen::MatrixXd rates = p.rates();
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double mu = p.weights(i) * p.weights(j) * rates(z[i], z[j]);
      CHECK(std::abs(mean(i, j) - mu) <= 3.0 * std::sqrt(mu / draws));
    }
    const double half = 0.5 * p.weights(i) * p.weights(i) * rates(z[i], z[i]);
    CHECK(std::abs(mean(i, i) / 2.0 - half) <= 3.0 * std::sqrt(half / draws));
  }
}

TEST_CASE("unit weights reproduce homogeneous SBM block moments") {
  // Block counts of a w = 1 DCSBM are Poisson with mean n_ab * lambda_ab.
  ModelParams p;
  p.pi = Eigen::Vector2d(0.5, 0.5);
  p.lambda_tilde.resize(2, 2);
  p.lambda_tilde << 0.6, 0.2, 0.2, 0.9;
  const Labels z({0, 0, 0, 1, 1}, 2);
  p.weights = Eigen::VectorXd::Ones(5);
  Rng rng(31);
  const int draws = 50000;
  double m01 = 0.0, v01 = 0.0, m11 = 0.0;
  for (int t = 0; t < draws; ++t) {
    const Network x = sample_network(z, p, rng);
    double between = 0.0, within = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 3; j < 5; ++j) between += static_cast<double>(x(i, j));
    }
    for (int i = 3; i < 5; ++i) {
      for (int j = 3; j < 5; ++j) within += static_cast<double>(x(i, j));
    }
    m01 += between;
    v01 += between * between;
    m11 += within / 2.0;
  }
  m01 /= draws;
  v01 = v01 / draws - m01 * m01;
  m11 /= draws;
  const double mu01 = 6 * 0.2;  // n_01 = 3 * 2
  const double mu11 = 2 * 0.9;  // n_11 = 2^2 / 2
  CHECK(std::abs(m01 - mu01) <= 3.0 * std::sqrt(mu01 / draws));
  CHECK(std::abs(m11 - mu11) <= 3.0 * std::sqrt(mu11 / draws));
  // Poisson: variance equals mean. Standard error of the sample variance is
  // about sqrt((mu + 2 mu^2) / draws).
  CHECK(std::abs(v01 - mu01) <= 4.0 * std::sqrt((mu01 + 2 * mu01 * mu01) / draws));
}

TEST_CASE("generate: validity and determinism") {
  GeneratorConfig cfg;
  cfg.n = 40;
  cfg.k0 = 3;
  cfg.seed = 99;
  const Draw a = generate(cfg);
  const Draw b = generate(cfg);
  CHECK(a.network == b.network);
  CHECK(a.labels == b.labels);
  CHECK(a.params.weights == b.params.weights);
  CHECK(a.network.counts() == a.network.counts().transpose());
  for (int i = 0; i < 40; ++i) CHECK(a.network(i, i) % 2 == 0);
  cfg.seed = 100;
  CHECK_FALSE(generate(cfg).network == a.network);
}

TEST_CASE("generate: fixed mode") {
  GeneratorConfig cfg;
  cfg.mode = GeneratorMode::kFixed;
  cfg.n = 6;
  cfg.k0 = 2;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);

  ModelParams p;
  p.pi = Eigen::Vector2d(0.5, 0.5);
  p.lambda_tilde = Eigen::Matrix2d::Constant(1.0);
  cfg.fixed = p;
  const Draw d = generate(cfg);
  CHECK(validate_params(d.params, d.labels));

  cfg.labels = Labels({0, 0, 0, 1, 1, 1}, 2);
  cfg.weight_mode = WeightMode::kUnit;
  const Draw u = generate(cfg);
  CHECK(u.labels == *cfg.labels);
  CHECK(u.params.weights == Eigen::VectorXd::Ones(6));

  cfg.labels = Labels({0, 0}, 2);
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg.labels.reset();
  cfg.fixed->pi = Eigen::Vector2d(0.9, 0.9);
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg.fixed->pi = Eigen::Vector3d(0.2, 0.3, 0.5);
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
}

}  // TEST_SUITE
