#include "dcsbm/sampler.hpp"

#include <stdexcept>
#include <vector>

namespace dcsbm {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Count sample_poisson(double mean, Rng& rng) {
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<Count> dist(mean);
  return dist(rng);
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t root, std::uint64_t index) {
  return splitmix64(splitmix64(root) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Eigen::VectorXd sample_dirichlet(int dim, double alpha, Rng& rng) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  Eigen::VectorXd g(dim);
  // Gamma(1/2) draws can underflow to zero; redraw so every coordinate of the
  // result is strictly positive.
  for (;;) {
    for (int a = 0; a < dim; ++a) g(a) = gamma(rng);
    if ((g.array() > 0.0).all()) break;
  }
  return g / g.sum();
}

Labels sample_labels(const Eigen::VectorXd& pi, int n, Rng& rng) {
  const int k = static_cast<int>(pi.size());
  if (k < 1) throw std::invalid_argument("pi must be nonempty");
  std::discrete_distribution<int> dist(pi.data(), pi.data() + k);
  std::vector<int> z(static_cast<std::size_t>(n));
  for (auto& label : z) label = dist(rng);
  return Labels(std::move(z), k);
}

Eigen::VectorXd sample_weights(const Labels& z, WeightMode mode, Rng& rng) {
  const int n = z.size();
  Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
  if (mode == WeightMode::kUnit) return w;

  std::vector<std::vector<int>> members(static_cast<std::size_t>(z.k));
  for (int i = 0; i < n; ++i) members[static_cast<std::size_t>(z[i])].push_back(i);
  for (const auto& block : members) {
    const int size = static_cast<int>(block.size());
    if (size == 0) continue;
    const Eigen::VectorXd share = sample_dirichlet(size, 0.5, rng);
    for (int j = 0; j < size; ++j) {
      w(block[static_cast<std::size_t>(j)]) = static_cast<double>(size) * share(j);
    }
  }
  return w;
}

std::pair<ModelParams, Labels> sample_params(const GeneratorConfig& cfg,
                                             Rng& rng) {
  if (cfg.k0 < 1 || cfg.n < 1 || !(cfg.rho > 0.0)) {
    throw std::invalid_argument("generator needs k0 >= 1, n >= 1, rho > 0");
  }
  ModelParams p;
  p.pi = sample_dirichlet(cfg.k0, 0.5, rng);
  Labels z = sample_labels(p.pi, cfg.n, rng);
  p.weights = sample_weights(z, cfg.weight_mode, rng);

  std::gamma_distribution<double> gamma(0.5, 1.0);
  p.lambda_tilde.resize(cfg.k0, cfg.k0);
  for (int a = 0; a < cfg.k0; ++a) {
    for (int b = a; b < cfg.k0; ++b) {
      const double l = gamma(rng);
      p.lambda_tilde(a, b) = l;
      p.lambda_tilde(b, a) = l;
    }
  }
  p.rho = cfg.rho;
  return {std::move(p), std::move(z)};
}

Network sample_network(const Labels& z, const ModelParams& params, Rng& rng) {
  const int n = z.size();
  if (params.weights.size() != n) {
    throw std::invalid_argument("weights and labels differ in length");
  }
  CountMatrix x = CountMatrix::Zero(n, n);
  const Eigen::MatrixXd rates = params.rates();
  const Eigen::VectorXd& w = params.weights;
  for (int i = 0; i < n; ++i) {
    x(i, i) = 2 * sample_poisson(0.5 * w(i) * w(i) * rates(z[i], z[i]), rng);
    for (int j = i + 1; j < n; ++j) {
      const Count c = sample_poisson(w(i) * w(j) * rates(z[i], z[j]), rng);
      x(i, j) = c;
      x(j, i) = c;
    }
  }
  return Network(std::move(x));
}

Draw generate(const GeneratorConfig& cfg) {
  Rng rng(cfg.seed);
  Draw d;
  if (cfg.mode == GeneratorMode::kHierarchical) {
    auto [params, labels] = sample_params(cfg, rng);
    d.params = std::move(params);
    d.labels = std::move(labels);
  } else {
    if (!cfg.fixed) throw std::invalid_argument("fixed mode requires params");
    d.params = *cfg.fixed;
    if (d.params.k() != cfg.k0) {
      throw std::invalid_argument("fixed params have k != k0");
    }
    d.labels = cfg.labels ? *cfg.labels : sample_labels(d.params.pi, cfg.n, rng);
    if (d.labels.size() != cfg.n) {
      throw std::invalid_argument("fixed labels have length != n");
    }
    if (d.params.weights.size() == 0) {
      d.params.weights = sample_weights(d.labels, cfg.weight_mode, rng);
    }
    if (!validate_params(d.params, d.labels)) {
      throw std::invalid_argument("fixed params violate the model invariants");
    }
  }
  d.network = sample_network(d.labels, d.params, rng);
  return d;
}

}  // namespace dcsbm
