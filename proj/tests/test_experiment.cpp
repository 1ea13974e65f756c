#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dcsbm/experiment.hpp"

using namespace dcsbm;

namespace {

ExperimentConfig base_config() {
  ExperimentConfig cfg;
  cfg.k0 = 2;
  cfg.pi = Eigen::Vector2d(0.5, 0.5);
  cfg.lambda_tilde.resize(2, 2);
  cfg.lambda_tilde << 4, 1, 1, 4;
  cfg.n_grid = {6, 10};
  cfg.trials = 4;
  cfg.backend = EvidenceBackend::kBracket;
  cfg.k_max = 3;
  cfg.restarts = 3;
  cfg.seed = 7;
  return cfg;
}

std::string trials_csv(const ExperimentConfig& cfg, const ExperimentResult& r) {
  std::ostringstream os;
  write_trials_csv(os, r.trials, cfg.k_max);
  return os.str();
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("rho rules") {
  CHECK(RhoRule{RhoRule::Kind::kFixed, 0.7}.rho(100) == 0.7);
  CHECK(RhoRule{RhoRule::Kind::kSemiSparse, 2.0}.rho(100) ==
        doctest::Approx(2.0 * std::log(100.0) / 100.0));
}

TEST_CASE("validation") {
  CHECK_NOTHROW(validate(base_config()));
  auto broken = [](auto edit) {
    ExperimentConfig cfg = base_config();
    edit(cfg);
    return cfg;
  };
  CHECK_THROWS_AS(validate(broken([](auto& c) { c.n_grid.clear(); })), std::invalid_argument);
  CHECK_THROWS_AS(validate(broken([](auto& c) { c.trials = 0; })), std::invalid_argument);
  CHECK_THROWS_AS(validate(broken([](auto& c) { c.pi = Eigen::Vector2d(0.5, 0.6); })),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(broken([](auto& c) { c.lambda_tilde(0, 1) = 2; })),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(broken([](auto& c) { c.rho_rule = {RhoRule::Kind::kFixed, 0.0}; })),
                  std::invalid_argument);
  // ln 1 = 0 makes the semi-sparse rule vanish at n = 1.
  CHECK_THROWS_AS(validate(broken([](auto& c) {
                    c.rho_rule = {RhoRule::Kind::kSemiSparse, 1.0};
                    c.n_grid = {1};
                  })),
                  std::invalid_argument);

  ExperimentConfig exact = broken([](auto& c) {
    c.backend = EvidenceBackend::kExact;
    c.n_grid = {40};
  });
  try {
    validate(exact);
    FAIL("expected refusal");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("bracket") != std::string::npos);
  }
}

TEST_CASE("records are consistent with the summary") {
  const ExperimentConfig cfg = base_config();
  const ExperimentResult r = run_experiment(cfg);
  REQUIRE(r.trials.size() == 8);
  REQUIRE(r.summary.size() == 2);
  for (std::size_t i = 0; i < r.trials.size(); ++i) {
    const TrialRecord& t = r.trials[i];
    CHECK(t.n == cfg.n_grid[i / 4]);
    CHECK(t.trial == static_cast<int>(i % 4));
    CHECK(t.seed == substream_seed(cfg.seed, i));
    CHECK(t.correct == (t.k_hat == t.k0));
    CHECK(t.scores.size() == 3);
    CHECK(t.runtime_ms < 0.0);
  }
  for (std::size_t g = 0; g < 2; ++g) {
    int correct = 0;
    for (std::size_t t = 0; t < 4; ++t) correct += r.trials[g * 4 + t].correct;
    CHECK(r.summary[g].correct == correct);
    CHECK(r.summary[g].accuracy == correct / 4.0);
  }
}

TEST_CASE("output does not depend on the worker count") {
  ExperimentConfig cfg = base_config();
  const std::string one = trials_csv(cfg, run_experiment(cfg));
  cfg.threads = 4;
  CHECK(trials_csv(cfg, run_experiment(cfg)) == one);
  CHECK(trials_csv(cfg, run_experiment(cfg)) == one);
}

TEST_CASE("single-community experiment with the exact backend") {
  ExperimentConfig cfg;
  cfg.k0 = 1;
  cfg.pi = Eigen::VectorXd::Ones(1);
  cfg.lambda_tilde = Eigen::MatrixXd::Constant(1, 1, 2.0);
  cfg.n_grid = {4, 6};
  cfg.trials = 5;
  cfg.backend = EvidenceBackend::kExact;
  cfg.k_max = 3;
  const ExperimentResult r = run_experiment(cfg);
  for (const SummaryRow& row : r.summary) CHECK(row.accuracy == 1.0);
}

TEST_CASE("k_max above n is clipped per grid point") {
  ExperimentConfig cfg = base_config();
  cfg.n_grid = {2};
  cfg.k_max = 3;
  const ExperimentResult r = run_experiment(cfg);
  for (const TrialRecord& t : r.trials) CHECK(t.scores.size() == 2);
  const std::string csv = trials_csv(cfg, r);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "n,trial,seed,k0,k_hat,correct,runtime_ms,score_k1,score_k2,score_k3");
  // The missing third score leaves an empty trailing field.
  const std::string first_row = csv.substr(csv.find('\n') + 1);
  CHECK(first_row.substr(0, first_row.find('\n')).back() == ',');
}

TEST_CASE("timing fills runtime_ms") {
  ExperimentConfig cfg = base_config();
  cfg.timing = true;
  cfg.trials = 1;
  for (const TrialRecord& t : run_experiment(cfg).trials) CHECK(t.runtime_ms >= 0.0);
}

TEST_CASE("summary CSV") {
  std::ostringstream os;
  write_summary_csv(os, {{50, 4, 3, 0.75}});
  CHECK(os.str() == "n,trials,correct,accuracy\n50,4,3,0.75\n");
}

}  // TEST_SUITE
