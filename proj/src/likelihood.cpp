#include "dcsbm/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "block_state.hpp"
#include "dcsbm/special.hpp"

namespace dcsbm {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Relative slack below which a later candidate does not replace the incumbent,
// so floating noise between label-permuted optima cannot break tie order.
bool improves(double candidate, double incumbent) {
  return candidate > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent));
}

double evaluate(const detail::BlockState& s, SearchObjective objective) {
  return objective == SearchObjective::kProfile ? s.log_profile()
                                                : s.log_evidence_term();
}

Labels degree_sorted_labels(const detail::NodeTerms& nodes, int n, int k) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return nodes.degree(a) > nodes.degree(b);
  });
  std::vector<int> z(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    z[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] =
        static_cast<int>(static_cast<long long>(r) * k / n);
  }
  return Labels(std::move(z), k);
}

ProfileResult exhaustive_search(const Network& x,
                                const detail::NodeTerms& nodes, int k,
                                std::uint64_t budget,
                                SearchObjective objective) {
  const int n = x.size();
  if (labeling_count(k, n) > budget) {
    throw BudgetExceeded("exhaustive search over [" + std::to_string(k) +
                         "]^" + std::to_string(n) + " exceeds budget of " +
                         std::to_string(budget) + " labelings");
  }
  detail::BlockState state(x, nodes, Labels::constant(n, k));
  ProfileResult best;
  best.z_hat = state.labels();
  best.log_sup = kNegInf;
  best.exhaustive = true;

  // Depth-first over node 0 (most significant) to node n-1, so leaves are
  // visited in lexicographic order.
  auto visit = [&](auto&& self, int depth) -> void {
    if (depth == n) {
      ++best.evaluations;
      const double v = evaluate(state, objective);
      if (best.log_sup == kNegInf ? v > kNegInf : improves(v, best.log_sup)) {
        best.log_sup = v;
        best.z_hat = state.labels();
      }
      return;
    }
    for (int c = 0; c < k; ++c) {
      state.move(depth, c);
      self(self, depth + 1);
    }
  };
  visit(visit, 0);
  if (best.log_sup == kNegInf) best.log_sup = evaluate(state, objective);
  return best;
}

}  // namespace

double log_c(const Network& x) { return detail::NodeTerms(x).log_c; }

double log_joint(const Network& x, const Labels& z, const ModelParams& params) {
  const SuffStats s = compute_stats(x, z);
  const int k = z.k;
  if (params.k() != k || params.lambda_tilde.rows() != k ||
      params.lambda_tilde.cols() != k || params.weights.size() != x.size()) {
    throw std::invalid_argument("parameter dimensions do not match labels");
  }
  if (!(params.rho > 0.0)) throw std::invalid_argument("rho must be positive");

  double total = 0.0;
  for (int a = 0; a < k; ++a) {
    if (s.community_size(a) == 0) continue;
    if (params.pi(a) <= 0.0) return kNegInf;
    total += static_cast<double>(s.community_size(a)) * std::log(params.pi(a));
  }

  total -= log_c(x);

  for (int i = 0; i < x.size(); ++i) {
    const double w = params.weights(i);
    if (w < 0.0) throw std::invalid_argument("negative node weight");
    if (s.degree(i) == 0) continue;
    if (w == 0.0) return kNegInf;
    total += static_cast<double>(s.degree(i)) * std::log(w);
  }

  const Eigen::MatrixXd rates = params.rates();
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) {
      const double lambda = rates(a, b);
      if (lambda < 0.0) throw std::invalid_argument("negative block rate");
      const double o = static_cast<double>(s.edges(a, b));
      if (o > 0.0 && lambda == 0.0) return kNegInf;
      total += xlogy(o, lambda) - s.pairs(a, b) * lambda;
    }
  }
  return total;
}

ModelParams mle_params(const Network& x, const Labels& z) {
  const SuffStats s = compute_stats(x, z);
  const int k = z.k;
  const int n = x.size();
  ModelParams p;
  p.rho = 1.0;
  p.pi = s.community_size.cast<double>() / static_cast<double>(n);
  p.lambda_tilde = Eigen::MatrixXd::Zero(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const Count o = s.edges(std::min(a, b), std::max(a, b));
      if (o > 0) p.lambda_tilde(a, b) = static_cast<double>(o) / s.pairs(a, b);
    }
  }
  p.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const int a = z[i];
    const Count dt = s.block_degree(a);
    p.weights(i) = dt == 0 ? 1.0
                           : static_cast<double>(s.community_size(a)) *
                                 static_cast<double>(s.degree(i)) /
                                 static_cast<double>(dt);
  }
  return p;
}

double log_profile_sup(const Network& x, const Labels& z) {
  const detail::NodeTerms nodes(x);
  return detail::BlockState(x, nodes, z).log_profile();
}

std::uint64_t labeling_count(int k, int n) {
  std::uint64_t total = 1;
  const auto base = static_cast<std::uint64_t>(k);
  for (int i = 0; i < n; ++i) {
    if (base != 0 && total > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= base;
  }
  return total;
}

ProfileResult search_labels(const Network& x, int k,
                            const SearchStrategy& strategy, Rng& rng,
                            SearchObjective objective) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const int n = x.size();
  const detail::NodeTerms nodes(x);

  if (k == 1) {
    detail::BlockState state(x, nodes, Labels::constant(n, 1));
    ProfileResult r;
    r.z_hat = state.labels();
    r.log_sup = evaluate(state, objective);
    r.exhaustive = true;
    r.evaluations = 1;
    return r;
  }
  if (strategy.kind == SearchStrategy::Kind::kExhaustive) {
    return exhaustive_search(x, nodes, k, strategy.budget, objective);
  }

  ProfileResult best;
  best.log_sup = kNegInf;
  std::uniform_int_distribution<int> pick(0, k - 1);
  const int restarts = std::max(1, strategy.restarts);

  for (int r = 0; r < restarts; ++r) {
    Labels init;
    if (r == 0) {
      init = degree_sorted_labels(nodes, n, k);
    } else {
      std::vector<int> z(static_cast<std::size_t>(n));
      for (auto& label : z) label = pick(rng);
      init = Labels(std::move(z), k);
    }
    detail::BlockState state(x, nodes, std::move(init));
    double current = evaluate(state, objective);
    ++best.evaluations;

    for (int sweep = 0; sweep < strategy.max_sweeps; ++sweep) {
      ++best.sweeps;
      bool moved = false;
      for (int i = 0; i < n; ++i) {
        const int home = state.labels()[i];
        int target = home;
        double target_value = current;
        for (int c = 0; c < k; ++c) {
          if (c == home) continue;
          state.move(i, c);
          const double v = evaluate(state, objective);
          ++best.evaluations;
          if (improves(v, target_value)) {
            target = c;
            target_value = v;
          }
        }
        state.move(i, target);
        if (target != home) {
          current = target_value;
          moved = true;
        }
      }
      if (!moved) break;
    }
    if (best.log_sup == kNegInf || improves(current, best.log_sup)) {
      best.log_sup = current;
      best.z_hat = state.labels();
    }
  }
  best.restarts = restarts;
  best.exhaustive = false;
  return best;
}

}  // namespace dcsbm
