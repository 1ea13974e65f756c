#ifndef DCSBM_SRC_BLOCK_STATE_HPP
#define DCSBM_SRC_BLOCK_STATE_HPP

#include <vector>

#include "dcsbm/core.hpp"

namespace dcsbm::detail {

/// Per-network quantities that do not depend on the labeling.
struct NodeTerms {
  explicit NodeTerms(const Network& x);

  CountVector degree;
  std::vector<double> log_gamma_degree;  // ln Gamma(d_i + 1/2)
  double sum_dlogd = 0.0;                // sum_i d_i ln d_i
  double log_c = 0.0;                    // ln c(x)
};

/// Block counters of a labeling, updated in O(n + k) per single-node move.
class BlockState {
 public:
  BlockState(const Network& x, const NodeTerms& nodes, Labels z);

  void move(int i, int to);

  const Labels& labels() const { return z_; }
  int k() const { return z_.k; }

  /// ln A + ln B + ln C: the prior-integrated joint p_k(x | z) p_k(z) times c(x).
  double log_evidence_term() const;
  double log_a() const;
  double log_b() const;
  double log_c() const;

  /// ln A^ + ln B^ + ln C^: sup over parameters of p(x, z | theta) times c(x).
  double log_sup_term() const;
  double log_a_hat() const;
  double log_b_hat() const;
  double log_c_hat() const;

  /// log sup_theta p(x, z | theta).
  double log_profile() const { return log_sup_term() - nodes_.log_c; }

 private:
  const Network& x_;
  const NodeTerms& nodes_;
  Labels z_;
  CountVector size_;
  CountMatrix block_;
  CountVector block_degree_;
  std::vector<double> gamma_sum_;  // sum over members of ln Gamma(d_i + 1/2)
  std::vector<Count> row_scratch_;
};

}  // namespace dcsbm::detail

#endif  // DCSBM_SRC_BLOCK_STATE_HPP
