#ifndef DCSBM_SELECTION_HPP
#define DCSBM_SELECTION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dcsbm/core.hpp"
#include "dcsbm/marginal.hpp"

namespace dcsbm {

/// (k^3 + 3kn) ln(n + 1).
double penalty(int k, int n);

struct SelectionOptions {
  EvidenceBackend backend = EvidenceBackend::kExact;
  ExactOptions exact;
  SearchStrategy search = SearchStrategy::greedy();
  /// Root seed for the bracket backend; order k uses substream k.
  std::uint64_t seed = 0;
  /// Skip orders whose exact evidence exceeds the budget instead of failing.
  bool allow_partial = false;
  double tie_tolerance = 1e-9;
};

struct SelectionRow {
  int k = 1;
  bool feasible = true;
  EvidenceResult evidence;
  double penalty = 0.0;
  /// evidence.log_p - penalty (the bracket lower bound for that backend).
  double score = 0.0;
  std::string note;
};

struct SelectionReport {
  int n = 0;
  EvidenceBackend backend = EvidenceBackend::kExact;
  std::vector<SelectionRow> rows;
  int k_hat = 1;
  /// Orders whose score is within tie_tolerance of the maximum.
  std::vector<int> ties;
  /// Bracket backend: orders whose score bracket intersects the winner's.
  std::vector<int> overlaps;
  std::vector<std::string> warnings;
};

/// Index of the largest score, the smallest index among those within `tol`
/// of the maximum. Fills `ties` with every such index when given.
std::size_t argmax_smallest(const std::vector<double>& scores, double tol,
                            std::vector<std::size_t>* ties = nullptr);

/// Penalized marginal likelihood estimate of the number of communities over
/// k = 1..k_max. Requires 1 <= k_max <= n.
SelectionReport select_k(const Network& x, int k_max,
                         const SelectionOptions& options = {});

}  // namespace dcsbm

#endif  // DCSBM_SELECTION_HPP
