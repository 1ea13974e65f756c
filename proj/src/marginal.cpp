#include "dcsbm/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "block_state.hpp"
#include "dcsbm/special.hpp"

namespace dcsbm {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

// Calls visit(state, log_multiplicity) once per evidence term. With
// partitions, labelings are restricted growth strings and each stands for the
// k!/(k-b)! relabelings of its b occupied blocks.
template <typename Visit>
std::uint64_t enumerate(const Network& x, int k, const ExactOptions& options,
                        Visit&& visit) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const int n = x.size();
  const std::uint64_t terms = options.use_partitions ? partition_count(k, n)
                                                     : labeling_count(k, n);
  if (terms > options.budget) {
    throw BudgetExceeded("exact evidence for k=" + std::to_string(k) +
                         ", n=" + std::to_string(n) + " needs " +
                         (terms == kSaturated ? std::string("more than 2^64")
                                              : std::to_string(terms)) +
                         " terms, budget is " + std::to_string(options.budget));
  }

  const detail::NodeTerms nodes(x);
  detail::BlockState state(x, nodes, Labels::constant(n, k));
  if (n == 0) {
    visit(state, 0.0);
    return 1;
  }

  std::vector<double> log_mult(static_cast<std::size_t>(k) + 1, 0.0);
  for (int b = 1; b <= k; ++b) {
    log_mult[static_cast<std::size_t>(b)] =
        log_gamma(k + 1.0) - log_gamma(static_cast<double>(k - b) + 1.0);
  }

  std::uint64_t count = 0;
  auto descend = [&](auto&& self, int depth, int used) -> void {
    if (depth == n) {
      ++count;
      visit(state, options.use_partitions
                       ? log_mult[static_cast<std::size_t>(used)]
                       : 0.0);
      return;
    }
    const int top = options.use_partitions ? std::min(used + 1, k) : k;
    for (int c = 0; c < top; ++c) {
      state.move(depth, c);
      self(self, depth + 1, std::max(used, c + 1));
    }
  };
  descend(descend, 0, 0);
  return count;
}

}  // namespace

EvidenceTerms log_abc(const Network& x, const Labels& z) {
  const detail::NodeTerms nodes(x);
  const detail::BlockState s(x, nodes, z);
  return {s.log_a(), s.log_b(), s.log_c()};
}

EvidenceTerms log_abc_hat(const Network& x, const Labels& z) {
  const detail::NodeTerms nodes(x);
  const detail::BlockState s(x, nodes, z);
  return {s.log_a_hat(), s.log_b_hat(), s.log_c_hat()};
}

std::string to_string(EvidenceBackend backend) {
  return backend == EvidenceBackend::kExact ? "exact" : "bracket";
}

EvidenceBackend evidence_backend_from_string(const std::string& name) {
  if (name == "exact") return EvidenceBackend::kExact;
  if (name == "bracket") return EvidenceBackend::kBracket;
  throw std::invalid_argument("unknown backend '" + name +
                              "' (expected exact or bracket)");
}

std::uint64_t partition_count(int k, int n) {
  if (n == 0) return 1;
  const int kmax = std::min(k, n);
  // row[b] = S(m, b), Stirling numbers of the second kind.
  std::vector<std::uint64_t> row(static_cast<std::size_t>(kmax) + 1, 0);
  row[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int b = std::min(m, kmax); b >= 1; --b) {
      row[static_cast<std::size_t>(b)] = saturating_add(
          saturating_mul(static_cast<std::uint64_t>(b),
                         row[static_cast<std::size_t>(b)]),
          row[static_cast<std::size_t>(b) - 1]);
    }
    row[0] = 0;
  }
  std::uint64_t total = 0;
  for (int b = 1; b <= kmax; ++b) {
    total = saturating_add(total, row[static_cast<std::size_t>(b)]);
  }
  return total;
}

EvidenceResult log_marginal_exact(const Network& x, int k,
                                  const ExactOptions& options) {
  LogSumExp acc;
  const std::uint64_t count =
      enumerate(x, k, options, [&](const detail::BlockState& s, double lm) {
        acc.add(s.log_evidence_term() + lm);
      });
  EvidenceResult r;
  r.k = k;
  r.backend = EvidenceBackend::kExact;
  r.log_p = acc.value() - log_c(x);
  r.lower = r.log_p;
  r.upper = r.log_p;
  r.rigorous = true;
  r.terms_evaluated = count;
  return r;
}

double log_sum_sup(const Network& x, int k, const ExactOptions& options) {
  LogSumExp acc;
  enumerate(x, k, options, [&](const detail::BlockState& s, double lm) {
    acc.add(s.log_sup_term() + lm);
  });
  return acc.value() - log_c(x);
}

EvidenceResult log_marginal_bracket(const Network& x, int k,
                                    const SearchStrategy& search, Rng& rng) {
  const ProfileResult best =
      search_labels(x, k, search, rng, SearchObjective::kEvidenceTerm);
  EvidenceResult r;
  r.k = k;
  r.backend = EvidenceBackend::kBracket;
  r.lower = best.log_sup - log_c(x);
  r.log_p = r.lower;
  r.upper = r.lower + static_cast<double>(x.size()) * std::log(static_cast<double>(k));
  r.rigorous = best.exhaustive;
  r.terms_evaluated = best.evaluations;
  return r;
}

}  // namespace dcsbm
