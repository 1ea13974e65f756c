#ifndef DCSBM_EXPERIMENT_HPP
#define DCSBM_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dcsbm/sampler.hpp"
#include "dcsbm/selection.hpp"

namespace dcsbm {

/// Sparsity scale as a function of n: fixed (dense regime) or C ln n / n
/// (semi-sparse regime).
struct RhoRule {
  enum class Kind { kFixed, kSemiSparse };
  Kind kind = Kind::kFixed;
  double value = 1.0;

  double rho(int n) const;
};

struct ExperimentConfig {
  int k0 = 2;
  Eigen::VectorXd pi;
  Eigen::MatrixXd lambda_tilde;
  RhoRule rho_rule;
  WeightMode weights = WeightMode::kDirichlet;
  std::vector<int> n_grid;
  int trials = 1;
  EvidenceBackend backend = EvidenceBackend::kBracket;
  int k_max = 3;
  int restarts = 10;
  int max_sweeps = 100;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  std::string output;
  int threads = 1;
  bool allow_partial = false;
  /// Record wall time per trial. Off by default so output is reproducible.
  bool timing = false;
};

struct TrialRecord {
  int n = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  int k0 = 0;
  int k_hat = 0;
  bool correct = false;
  /// score_k for k = 1..k_max; -inf for skipped orders.
  std::vector<double> scores;
  /// Negative when timing is disabled.
  double runtime_ms = -1.0;
};

struct SummaryRow {
  int n = 0;
  int trials = 0;
  int correct = 0;
  double accuracy = 0.0;
};

struct ExperimentResult {
  std::vector<TrialRecord> trials;
  std::vector<SummaryRow> summary;
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const ExperimentConfig& cfg);

/// Samples a planted network per (n, trial) from its own substream of
/// cfg.seed, runs select_k, and summarizes accuracy per n. Output is sorted by
/// (n, trial) and does not depend on cfg.threads.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& trials,
                      int k_max);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& summary);

}  // namespace dcsbm

#endif  // DCSBM_EXPERIMENT_HPP
