#ifndef DCSBM_THEORY_HPP
#define DCSBM_THEORY_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dcsbm/core.hpp"
#include "dcsbm/sampler.hpp"

namespace dcsbm {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kCheckTolerance = 1e-9;

/// Outcome of evaluating one inequality. margin is bound minus attained value
/// (in log scale for multiplicative bounds); holds iff margin >= -1e-9.
struct CheckResult {
  std::string name;
  bool holds = true;
  double margin = 0.0;
  std::string witness;
};

CheckResult make_check(std::string name, double margin, std::string witness = {});

/// prod (m_j/m)^{m_j} / prod Gamma(m_j + 1/2)
///   <= 1 / (Gamma(m + 1/2) Gamma(1/2)^{J-1}),  m = sum m_j.
CheckResult check_gamma_partition(const std::vector<int>& parts);

/// Gamma(1/2) Gamma(m + J/2) / (Gamma(J/2) Gamma(m + 1/2)) <= m^J for
/// m >= max(J, 3). Throws std::invalid_argument outside that domain.
CheckResult check_gamma_ratio(int m, int J);

struct RatioChecks {
  CheckResult a;  // A^/A <= (n+1)^{k(k+1)}
  CheckResult b;  // B^/B <= (n^2 ln n)^n
  CheckResult c;  // C^/C <= n^k
  double log_ratio_a = 0.0;
  double log_ratio_b = 0.0;
  double log_ratio_c = 0.0;
};

/// The three factor-wise sup/average bounds. Requires n >= 3 and x in the
/// good set (every x_ij <= ln n); throws std::invalid_argument otherwise.
RatioChecks check_ratio_bounds(const Network& x, const Labels& z);

/// Weighted confusion matrix, k x k0:
/// Q_{a a'} = (1/n) sum_i w_i 1{z_bar_i = a, z0_i = a'}.
template <typename Scalar>
MatrixX<Scalar> q_matrix(const Labels& z_bar, const Labels& z0,
                         const VectorX<Scalar>& w) {
  const int n = z_bar.size();
  if (z0.size() != n || w.size() != n) {
    throw std::invalid_argument("q_matrix: length mismatch");
  }
  MatrixX<Scalar> q = MatrixX<Scalar>::Zero(z_bar.k, z0.k);
  for (int i = 0; i < n; ++i) q(z_bar[i], z0[i]) += w(i);
  return q / static_cast<Scalar>(n);
}

/// phi(u) = u ln u with phi(0) = 0.
template <typename Scalar>
Scalar phi(Scalar u) {
  using std::log;
  return u == Scalar(0) ? Scalar(0) : u * log(u);
}

/// F(pi, lambda) = 1/2 sum_{a,b} pi_a pi_b s_a s_b phi(lambda_ab / (s_a s_b)),
/// s = lambda pi. Terms with zero mass vanish.
template <typename Scalar>
Scalar merging_functional(const VectorX<Scalar>& pi, const MatrixX<Scalar>& lambda) {
  if (lambda.rows() != pi.size() || lambda.cols() != pi.size()) {
    throw std::invalid_argument("merging_functional: dimension mismatch");
  }
  const VectorX<Scalar> s = lambda * pi;
  Scalar total(0);
  for (Eigen::Index a = 0; a < pi.size(); ++a) {
    for (Eigen::Index b = 0; b < pi.size(); ++b) {
      const Scalar mass = pi(a) * pi(b) * s(a) * s(b);
      if (mass == Scalar(0)) continue;
      total += mass * phi<Scalar>(lambda(a, b) / (s(a) * s(b)));
    }
  }
  return total / Scalar(2);
}

/// A map h: [k0] -> [k] collapsing true communities onto k groups.
struct MergeMap {
  std::vector<int> h;
  int k = 1;

  int source_size() const { return static_cast<int>(h.size()); }

  /// R with R(h(a'), a') = pi_a' and zeros elsewhere.
  template <typename Scalar>
  MatrixX<Scalar> vertex(const VectorX<Scalar>& pi) const {
    if (pi.size() != source_size()) {
      throw std::invalid_argument("merge map and pi differ in length");
    }
    MatrixX<Scalar> r = MatrixX<Scalar>::Zero(k, source_size());
    for (int a = 0; a < source_size(); ++a) {
      const int target = h[static_cast<std::size_t>(a)];
      if (target < 0 || target >= k) {
        throw std::invalid_argument("merge map target outside [0, k)");
      }
      r(target, a) = pi(a);
    }
    return r;
  }
};

template <typename Scalar>
struct MergedParams {
  VectorX<Scalar> pi;
  MatrixX<Scalar> lambda;
};

/// pi* = R 1, lambda*_ab = [R lambda R^T]_ab / (pi*_a pi*_b), 0 where the
/// merged block has no mass.
template <typename Scalar>
MergedParams<Scalar> merged_params(const MergeMap& map, const VectorX<Scalar>& pi,
                                   const MatrixX<Scalar>& lambda) {
  const MatrixX<Scalar> r = map.vertex(pi);
  MergedParams<Scalar> out;
  out.pi = r.rowwise().sum();
  const MatrixX<Scalar> num = r * lambda * r.transpose();
  const MatrixX<Scalar> den = out.pi * out.pi.transpose();
  out.lambda = MatrixX<Scalar>::Zero(map.k, map.k);
  for (int a = 0; a < map.k; ++a) {
    for (int b = 0; b < map.k; ++b) {
      if (den(a, b) != Scalar(0)) out.lambda(a, b) = num(a, b) / den(a, b);
    }
  }
  return out;
}

/// F(pi, lambda) minus the largest F over all k^{k0} merge maps into [k].
/// Requires k < k0.
template <typename Scalar>
Scalar identifiability_gap(const VectorX<Scalar>& pi, const MatrixX<Scalar>& lambda,
                           int k) {
  const int k0 = static_cast<int>(pi.size());
  if (k < 1 || k >= k0) {
    throw std::invalid_argument("identifiability_gap needs 1 <= k < k0");
  }
  const Scalar full = merging_functional<Scalar>(pi, lambda);
  MergeMap map{std::vector<int>(static_cast<std::size_t>(k0), 0), k};
  bool first = true;
  Scalar best(0);
  for (;;) {
    const auto merged = merged_params<Scalar>(map, pi, lambda);
    const Scalar f = merging_functional<Scalar>(merged.pi, merged.lambda);
    if (first || f > best) best = f;
    first = false;
    int pos = k0 - 1;
    while (pos >= 0 && map.h[static_cast<std::size_t>(pos)] == k - 1) {
      map.h[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++map.h[static_cast<std::size_t>(pos)];
  }
  return full - best;
}

struct Deviation {
  Eigen::MatrixXd block;   // |o~_ab(x, z_bar)/(rho n^2) - [Q lambda~ Q^T]_ab|
  Eigen::VectorXd degree;  // |d^t_a(x, z_bar)/(rho n^2) - [Q lambda~ Q^T 1]_a|
};

/// Deviation of the normalized block counters of candidate labels z_bar from
/// their expectation given the planted labels z0 and `params` (the weights
/// that generated x).
Deviation concentration_deviation(const Network& x, const Labels& z0,
                                  const Labels& z_bar, const ModelParams& params);

/// Smallest 1 - cos(angle) over pairs of distinct columns.
double min_column_cosine_distance(const Eigen::MatrixXd& lambda);

/// Random network with every entry at most ln n (even diagonal), entries
/// uniform over the admissible values.
Network random_good_network(int n, Rng& rng);

/// Aggregate of one family of checks.
struct SweepSummary {
  std::string name;
  int cases = 0;
  int failures = 0;
  double worst_margin = 0.0;
  std::string witness;

  bool passed() const { return failures == 0; }
};

/// Runs every inequality check over its randomized or exhaustive sweep domain.
std::vector<SweepSummary> run_theory_sweeps(std::uint64_t seed);

}  // namespace dcsbm

#endif  // DCSBM_THEORY_HPP
