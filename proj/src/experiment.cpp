#include "dcsbm/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "dcsbm/io.hpp"

namespace dcsbm {

double RhoRule::rho(int n) const {
  if (kind == Kind::kFixed) return value;
  return value * std::log(static_cast<double>(n)) / static_cast<double>(n);
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.k0 < 1) throw std::invalid_argument("k0 must be at least 1");
  if (cfg.pi.size() != cfg.k0) throw std::invalid_argument("pi must have k0 entries");
  if (std::abs(cfg.pi.sum() - 1.0) > 1e-9 || cfg.pi.minCoeff() <= 0.0) {
    throw std::invalid_argument("pi must be a positive probability vector");
  }
  if (cfg.lambda_tilde.rows() != cfg.k0 || cfg.lambda_tilde.cols() != cfg.k0 ||
      cfg.lambda_tilde != cfg.lambda_tilde.transpose() ||
      cfg.lambda_tilde.minCoeff() <= 0.0) {
    throw std::invalid_argument("lambda_tilde must be a symmetric positive k0 x k0 matrix");
  }
  if (cfg.n_grid.empty()) throw std::invalid_argument("n_grid is empty");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (cfg.k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be at least 1");
  for (int n : cfg.n_grid) {
    if (n < 1) throw std::invalid_argument("grid sizes must be positive");
    const double rho = cfg.rho_rule.rho(n);
    if (!(rho > 0.0) || !std::isfinite(rho)) {
      throw std::invalid_argument("rho rule gives rho <= 0 at n=" + std::to_string(n));
    }
    if (cfg.backend == EvidenceBackend::kExact && !cfg.allow_partial &&
        partition_count(std::min(cfg.k_max, n), n) > cfg.budget) {
      throw std::invalid_argument(
          "exact backend is infeasible at n=" + std::to_string(n) +
          " with k_max=" + std::to_string(cfg.k_max) +
          "; use the bracket backend or raise the budget");
    }
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::size_t per_n = static_cast<std::size_t>(cfg.trials);
  const std::size_t total = cfg.n_grid.size() * per_n;
  std::vector<TrialRecord> records(total);

  auto run_one = [&](std::size_t index) {
    const int n = cfg.n_grid[index / per_n];
    const int trial = static_cast<int>(index % per_n);
    const auto start = std::chrono::steady_clock::now();

    TrialRecord rec;
    rec.n = n;
    rec.trial = trial;
    rec.seed = substream_seed(cfg.seed, index);
    rec.k0 = cfg.k0;

    GeneratorConfig gen;
    gen.n = n;
    gen.k0 = cfg.k0;
    gen.mode = GeneratorMode::kFixed;
    ModelParams params;
    params.pi = cfg.pi;
    params.lambda_tilde = cfg.lambda_tilde;
    params.rho = cfg.rho_rule.rho(n);
    gen.fixed = std::move(params);
    gen.weight_mode = cfg.weights;
    gen.seed = rec.seed;
    const Draw draw = generate(gen);

    SelectionOptions opts;
    opts.backend = cfg.backend;
    opts.exact.budget = cfg.budget;
    opts.search = SearchStrategy::greedy(cfg.restarts, cfg.max_sweeps);
    opts.seed = rec.seed;
    opts.allow_partial = cfg.allow_partial;
    const SelectionReport report =
        select_k(draw.network, std::min(cfg.k_max, n), opts);

    rec.k_hat = report.k_hat;
    rec.correct = rec.k_hat == rec.k0;
    for (const auto& row : report.rows) rec.scores.push_back(row.score);
    if (cfg.timing) {
      rec.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    }
    records[index] = std::move(rec);
  };

  if (cfg.threads == 1) {
    for (std::size_t i = 0; i < total; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    for (int t = 0; t < cfg.threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < total; i = next++) {
          try {
            run_one(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
  }

  ExperimentResult result;
  result.trials = std::move(records);
  for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
    SummaryRow row;
    row.n = cfg.n_grid[g];
    row.trials = cfg.trials;
    for (std::size_t t = 0; t < per_n; ++t) {
      row.correct += result.trials[g * per_n + t].correct ? 1 : 0;
    }
    row.accuracy = static_cast<double>(row.correct) / row.trials;
    result.summary.push_back(row);
  }
  return result;
}

void write_trials_csv(std::ostream& os, const std::vector<TrialRecord>& trials,
                      int k_max) {
  os << "n,trial,seed,k0,k_hat,correct,runtime_ms";
  for (int k = 1; k <= k_max; ++k) os << ",score_k" << k;
  os << '\n';
  for (const auto& t : trials) {
    os << t.n << ',' << t.trial << ',' << t.seed << ',' << t.k0 << ','
       << t.k_hat << ',' << (t.correct ? 1 : 0) << ',';
    if (t.runtime_ms >= 0.0) os << format_double(t.runtime_ms);
    for (int k = 1; k <= k_max; ++k) {
      os << ',';
      if (static_cast<std::size_t>(k) <= t.scores.size()) {
        os << format_double(t.scores[static_cast<std::size_t>(k) - 1]);
      }
    }
    os << '\n';
  }
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& summary) {
  os << "n,trials,correct,accuracy\n";
  for (const auto& row : summary) {
    os << row.n << ',' << row.trials << ',' << row.correct << ','
       << format_double(row.accuracy) << '\n';
  }
}

}  // namespace dcsbm
