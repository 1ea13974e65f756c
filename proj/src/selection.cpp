#include "dcsbm/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dcsbm/sampler.hpp"

namespace dcsbm {

double penalty(int k, int n) {
  const double kd = k;
  const double nd = n;
  return (kd * kd * kd + 3.0 * kd * nd) * std::log1p(nd);
}

std::size_t argmax_smallest(const std::vector<double>& scores, double tol,
                            std::vector<std::size_t>* ties) {
  if (scores.empty()) throw std::invalid_argument("no scores to compare");
  double best = scores.front();
  for (double s : scores) best = std::max(best, s);
  std::size_t winner = scores.size();
  if (ties) ties->clear();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] >= best - tol) {
      if (winner == scores.size()) winner = i;
      if (ties) ties->push_back(i);
    }
  }
  return winner;
}

SelectionReport select_k(const Network& x, int k_max,
                         const SelectionOptions& options) {
  const int n = x.size();
  if (n < 1) throw std::invalid_argument("network has no nodes");
  if (k_max < 1 || k_max > n) {
    throw std::invalid_argument("k_max must lie in [1, n]");
  }

  SelectionReport report;
  report.n = n;
  report.backend = options.backend;
  for (int k = 1; k <= k_max; ++k) {
    SelectionRow row;
    row.k = k;
    row.penalty = penalty(k, n);
    if (options.backend == EvidenceBackend::kExact) {
      try {
        row.evidence = log_marginal_exact(x, k, options.exact);
      } catch (const BudgetExceeded& e) {
        if (!options.allow_partial) throw;
        row.feasible = false;
        row.note = e.what();
        row.evidence.k = k;
        report.warnings.push_back("k=" + std::to_string(k) + " skipped: " +
                                  e.what());
      }
    } else {
      Rng rng(substream_seed(options.seed, static_cast<std::uint64_t>(k)));
      row.evidence = log_marginal_bracket(x, k, options.search, rng);
      if (!row.evidence.rigorous) row.note = "upper bound not rigorous";
    }
    row.score = row.feasible ? row.evidence.log_p - row.penalty
                             : -std::numeric_limits<double>::infinity();
    report.rows.push_back(std::move(row));
  }

  std::vector<double> scores;
  std::vector<std::size_t> feasible;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    if (!report.rows[i].feasible) continue;
    feasible.push_back(i);
    scores.push_back(report.rows[i].score);
  }
  if (scores.empty()) {
    throw BudgetExceeded("no order in [1, k_max] is feasible for the exact "
                         "backend; use the bracket backend");
  }
  std::vector<std::size_t> tied;
  const std::size_t w = argmax_smallest(scores, options.tie_tolerance, &tied);
  const SelectionRow& winner = report.rows[feasible[w]];
  report.k_hat = winner.k;
  for (std::size_t t : tied) report.ties.push_back(report.rows[feasible[t]].k);

  if (options.backend == EvidenceBackend::kBracket) {
    const double lo = winner.evidence.lower - winner.penalty;
    const double hi = winner.evidence.upper - winner.penalty;
    for (std::size_t i : feasible) {
      const SelectionRow& row = report.rows[i];
      if (row.k == winner.k) continue;
      const double row_lo = row.evidence.lower - row.penalty;
      const double row_hi = row.evidence.upper - row.penalty;
      if (row_lo <= hi && lo <= row_hi) {
        report.overlaps.push_back(row.k);
        report.warnings.push_back("score bracket of k=" + std::to_string(row.k) +
                                  " overlaps the selected k=" +
                                  std::to_string(winner.k));
      }
    }
  }
  return report;
}

}  // namespace dcsbm
