#include "dcsbm/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace dcsbm {

Network::Network(CountMatrix counts) : counts_(std::move(counts)) {
  if (counts_.rows() != counts_.cols()) {
    throw std::invalid_argument("network matrix must be square");
  }
  const Eigen::Index n = counts_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (counts_(i, i) < 0 || counts_(i, i) % 2 != 0) {
      throw std::invalid_argument("diagonal entry " + std::to_string(i) +
                                  " must be a nonnegative even count");
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (counts_(i, j) < 0) {
        throw std::invalid_argument("negative count at (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
      }
      if (counts_(i, j) != counts_(j, i)) {
        throw std::invalid_argument("asymmetric entry at (" +
                                    std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
      }
    }
  }
}

Network Network::empty(int n) { return Network(CountMatrix::Zero(n, n)); }

Labels::Labels(std::vector<int> z_, int k_) : z(std::move(z_)), k(k_) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] < 0 || z[i] >= k) {
      throw std::invalid_argument("label of node " + std::to_string(i) +
                                  " outside [0, k)");
    }
  }
}

Labels Labels::constant(int n, int k, int label) {
  return Labels(std::vector<int>(static_cast<std::size_t>(n), label), k);
}

void check_labels(const Network& x, const Labels& z) {
  if (z.size() != x.size()) {
    throw std::invalid_argument("labels have length " +
                                std::to_string(z.size()) + ", network has " +
                                std::to_string(x.size()) + " nodes");
  }
  if (z.k < 1) throw std::invalid_argument("k must be at least 1");
  for (int i = 0; i < z.size(); ++i) {
    if (z[i] < 0 || z[i] >= z.k) {
      throw std::invalid_argument("label of node " + std::to_string(i) +
                                  " outside [0, k)");
    }
  }
}

SuffStats compute_stats(const Network& x, const Labels& z) {
  check_labels(x, z);
  const int n = x.size();
  const int k = z.k;

  SuffStats s;
  s.community_size = CountVector::Zero(k);
  s.block_counts = CountMatrix::Zero(k, k);
  s.degree = x.counts().rowwise().sum();
  s.block_degree = CountVector::Zero(k);

  for (int i = 0; i < n; ++i) {
    ++s.community_size(z[i]);
    s.block_degree(z[i]) += s.degree(i);
    for (int j = 0; j < n; ++j) s.block_counts(z[i], z[j]) += x(i, j);
  }

  s.edges = s.block_counts;
  s.pairs.resize(k, k);
  for (int a = 0; a < k; ++a) {
    s.edges(a, a) /= 2;
    for (int b = 0; b < k; ++b) {
      const double na = static_cast<double>(s.community_size(a));
      const double nb = static_cast<double>(s.community_size(b));
      s.pairs(a, b) = a == b ? 0.5 * na * na : na * nb;
    }
  }
  return s;
}

bool omega_membership(const Network& x) {
  if (x.size() == 0) return true;
  const double threshold = std::log(static_cast<double>(x.size()));
  return x.counts().size() == 0 ||
         static_cast<double>(x.counts().maxCoeff()) <= threshold;
}

bool validate_params(const ModelParams& p, const Labels& z,
                     ParamDomain domain) {
  const int k = p.k();
  if (k != z.k || p.lambda_tilde.rows() != k || p.lambda_tilde.cols() != k ||
      p.weights.size() != z.size()) {
    throw std::invalid_argument("parameter dimensions do not match labels");
  }
  const bool interior = domain == ParamDomain::kInterior;
  constexpr double kTol = 1e-9;

  if (!(p.rho > 0.0) || !std::isfinite(p.rho)) return false;
  if (std::abs(p.pi.sum() - 1.0) > kTol) return false;
  for (int a = 0; a < k; ++a) {
    if (!std::isfinite(p.pi(a)) || p.pi(a) < 0.0) return false;
    if (interior && p.pi(a) <= 0.0) return false;
    for (int b = 0; b < k; ++b) {
      const double l = p.lambda_tilde(a, b);
      if (!std::isfinite(l) || l < 0.0 || (interior && l <= 0.0)) return false;
      if (l != p.lambda_tilde(b, a)) return false;
    }
  }

  Eigen::VectorXd mass = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd size = Eigen::VectorXd::Zero(k);
  for (int i = 0; i < z.size(); ++i) {
    const double w = p.weights(i);
    if (!std::isfinite(w) || w < 0.0 || (interior && w <= 0.0)) return false;
    mass(z[i]) += w;
    size(z[i]) += 1.0;
  }
  return ((mass - size).array().abs() <= kTol).all();
}

}  // namespace dcsbm
