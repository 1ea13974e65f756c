#ifndef DCSBM_SAMPLER_HPP
#define DCSBM_SAMPLER_HPP

#include <cstdint>
#include <optional>
#include <random>

#include "dcsbm/core.hpp"

namespace dcsbm {

using Rng = std::mt19937_64;

/// Seed of the `index`-th independent substream of `root` (splitmix64 of the
/// pair). Trials seeded this way reproduce regardless of scheduling.
std::uint64_t substream_seed(std::uint64_t root, std::uint64_t index);

enum class GeneratorMode { kHierarchical, kFixed };

enum class WeightMode {
  /// w restricted to community a is n_a * Dirichlet(1/2, ..., 1/2).
  kDirichlet,
  /// w == 1, the homogeneous SBM.
  kUnit,
};

struct GeneratorConfig {
  int n = 1;
  int k0 = 1;
  GeneratorMode mode = GeneratorMode::kHierarchical;
  /// Used in fixed mode. Weights may be left empty, in which case they are
  /// drawn according to `weight_mode` once labels are known.
  std::optional<ModelParams> fixed;
  /// Fixed mode only: planted labels. Drawn from pi when absent.
  std::optional<Labels> labels;
  WeightMode weight_mode = WeightMode::kDirichlet;
  /// Sparsity scale used in hierarchical mode.
  double rho = 1.0;
  std::uint64_t seed = 0;
};

struct Draw {
  ModelParams params;
  Labels labels;
  Network network;
};

/// Dirichlet(alpha, ..., alpha) of dimension `dim` via Gamma normalization.
Eigen::VectorXd sample_dirichlet(int dim, double alpha, Rng& rng);

Labels sample_labels(const Eigen::VectorXd& pi, int n, Rng& rng);

/// Per-community n_a * Dirichlet(1/2) weights. A singleton community gets
/// weight exactly 1.
Eigen::VectorXd sample_weights(const Labels& z, WeightMode mode, Rng& rng);

/// Draws pi, then z, then w, then lambda_tilde from the hierarchical prior.
/// Returns the parameters together with the labels that the weights refer to.
std::pair<ModelParams, Labels> sample_params(const GeneratorConfig& cfg,
                                             Rng& rng);

/// x_ij ~ Poisson(w_i w_j rho lambda~_{z_i z_j}) for i < j and
/// x_ii = 2 M_i with M_i ~ Poisson(w_i^2 rho lambda~_{z_i z_i} / 2).
Network sample_network(const Labels& z, const ModelParams& params, Rng& rng);

/// Full generative pass for `cfg`, seeded from cfg.seed.
Draw generate(const GeneratorConfig& cfg);

}  // namespace dcsbm

#endif  // DCSBM_SAMPLER_HPP
