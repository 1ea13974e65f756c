#ifndef DCSBM_LIKELIHOOD_HPP
#define DCSBM_LIKELIHOOD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dcsbm/core.hpp"
#include "dcsbm/sampler.hpp"

namespace dcsbm {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// ln c(x) = sum_{i<j} ln x_ij! + sum_i [(x_ii/2) ln 2 + ln (x_ii/2)!].
double log_c(const Network& x);

/// ln p(z | pi) + ln p(x | z, w, rho * lambda_tilde).
///
/// Returns -inf when the data are impossible under the parameters: a nonempty
/// community with pi_a = 0, a zero-weight node with edges, or a zero rate on a
/// block with edges. Throws std::invalid_argument on negative rates or
/// weights and on dimension mismatch.
double log_joint(const Network& x, const Labels& z, const ModelParams& params);

/// Closed-form maximizers of log_joint for fixed z. Returned with rho = 1, so
/// lambda_tilde holds the rate estimates o_ab / n_ab (0 for blocks without
/// edges). Nodes in a community with zero total degree get weight 1.
ModelParams mle_params(const Network& x, const Labels& z);

/// log sup_theta p(x, z | theta), computed from the block counters.
double log_profile_sup(const Network& x, const Labels& z);

/// Objective maximized by label search.
enum class SearchObjective {
  /// log sup_theta p(x, z | theta).
  kProfile,
  /// ln A + ln B + ln C, the z-th term of the evidence sum (times c(x)).
  kEvidenceTerm,
};

struct SearchStrategy {
  enum class Kind { kExhaustive, kGreedy };
  Kind kind = Kind::kGreedy;
  int restarts = 10;
  int max_sweeps = 100;
  std::uint64_t budget = kDefaultBudget;

  static SearchStrategy exhaustive(std::uint64_t budget = kDefaultBudget) {
    return {Kind::kExhaustive, 0, 0, budget};
  }
  static SearchStrategy greedy(int restarts = 10, int max_sweeps = 100) {
    return {Kind::kGreedy, restarts, max_sweeps, kDefaultBudget};
  }
};

struct ProfileResult {
  Labels z_hat;
  /// Objective value at z_hat; log sup_theta p(x, z_hat | theta) for the
  /// profile objective.
  double log_sup = 0.0;
  /// True when z_hat is a global maximizer over [k]^n.
  bool exhaustive = false;
  int restarts = 0;
  int sweeps = 0;
  std::uint64_t evaluations = 0;
};

/// Thrown when exhaustive enumeration would exceed its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of labelings in [k]^n, saturating at UINT64_MAX.
std::uint64_t labeling_count(int k, int n);

/// Maximizes `objective` over z in [k]^n.
///
/// Exhaustive search enumerates [k]^n in lexicographic order and keeps the
/// first maximizer, so ties resolve to the lexicographically smallest z. It
/// throws BudgetExceeded when k^n exceeds strategy.budget.
///
/// Greedy search runs single-node ascent from one degree-sorted labeling and
/// restarts - 1 uniform random labelings: each node in turn moves to the
/// community that most improves the objective, until a sweep makes no move.
/// With k = 1 the search space is a single point and the result is flagged
/// exhaustive.
ProfileResult search_labels(const Network& x, int k,
                            const SearchStrategy& strategy, Rng& rng,
                            SearchObjective objective);

inline ProfileResult search_profile_labels(const Network& x, int k,
                                           const SearchStrategy& strategy,
                                           Rng& rng) {
  return search_labels(x, k, strategy, rng, SearchObjective::kProfile);
}

}  // namespace dcsbm

#endif  // DCSBM_LIKELIHOOD_HPP
