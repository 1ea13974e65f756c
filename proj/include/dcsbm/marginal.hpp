#ifndef DCSBM_MARGINAL_HPP
#define DCSBM_MARGINAL_HPP

#include <cstdint>
#include <string>

#include "dcsbm/core.hpp"
#include "dcsbm/likelihood.hpp"

namespace dcsbm {

/// Logs of the three factors of one evidence term. For the prior-integrated
/// version, p_k(x | z) = A B / c(x) and p_k(z) = C. For the sup version,
/// sup_{lambda,w} p(x | z, w, lambda) = A^ B^ / c(x) and sup_pi p(z | pi) = C^.
struct EvidenceTerms {
  double log_a = 0.0;
  double log_b = 0.0;
  double log_c = 0.0;
  double total() const { return log_a + log_b + log_c; }
};

/// ln A(x, z), ln B(x, z), ln C(z). Empty communities contribute a factor 1
/// to B.
EvidenceTerms log_abc(const Network& x, const Labels& z);

/// ln A^(x, z), ln B^(x, z), ln C^(z): the maximized counterparts.
EvidenceTerms log_abc_hat(const Network& x, const Labels& z);

enum class EvidenceBackend { kExact, kBracket };

std::string to_string(EvidenceBackend backend);
EvidenceBackend evidence_backend_from_string(const std::string& name);

struct EvidenceResult {
  int k = 1;
  EvidenceBackend backend = EvidenceBackend::kExact;
  /// Exact log p_k(x); equal to `lower` for the bracket backend.
  double log_p = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// Whether `upper` is a proven bound: always for the exact backend, and for
  /// the bracket backend only when its search was exhaustive.
  bool rigorous = true;
  std::uint64_t terms_evaluated = 0;
};

struct ExactOptions {
  /// Maximum number of evidence terms evaluated.
  std::uint64_t budget = kDefaultBudget;
  /// Sum over set partitions with at most k blocks, each weighted by the
  /// k!/(k-b)! labelings that realize it, instead of over all of [k]^n.
  bool use_partitions = true;
};

/// Number of set partitions of n nodes into at most k nonempty blocks,
/// saturating at UINT64_MAX.
std::uint64_t partition_count(int k, int n);

/// log p_k(x) by exhaustive summation. Throws BudgetExceeded when the number
/// of terms exceeds options.budget.
EvidenceResult log_marginal_exact(const Network& x, int k,
                                  const ExactOptions& options = {});

/// log sum_z sup_theta p(x, z | theta), the sup-likelihood counterpart of
/// log p_k(x). Same enumeration and budget rules as log_marginal_exact.
double log_sum_sup(const Network& x, int k, const ExactOptions& options = {});

/// Bracket [lower, upper] for log p_k(x). The search maximizes the evidence
/// term; lower is its best value minus ln c(x), a valid bound for any
/// searched z, and upper = lower + n ln k, rigorous only after exhaustive
/// search.
EvidenceResult log_marginal_bracket(const Network& x, int k,
                                    const SearchStrategy& search, Rng& rng);

}  // namespace dcsbm

#endif  // DCSBM_MARGINAL_HPP
