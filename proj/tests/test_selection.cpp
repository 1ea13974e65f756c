#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dcsbm/sampler.hpp"
#include "dcsbm/selection.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dcsbm;
using testing::net;

TEST_SUITE("selection") {

TEST_CASE("penalty values") {
  CHECK(penalty(1, 1) == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-15));
  CHECK(penalty(2, 10) == doctest::Approx(68.0 * std::log(11.0)).epsilon(1e-15));
  CHECK(penalty(2, 10) == doctest::Approx(163.06).epsilon(1e-4));
  for (int n = 1; n <= 300; n += 7) {
    for (int k = 1; k < 40; ++k) CHECK(penalty(k + 1, n) > penalty(k, n));
  }
}

TEST_CASE("argmax_smallest breaks ties toward the smallest index") {
  std::vector<std::size_t> ties;
  CHECK(argmax_smallest({-1.0, -1.0, -1.0}, 1e-9, &ties) == 0);
  CHECK(ties == std::vector<std::size_t>{0, 1, 2});
  CHECK(argmax_smallest({-5.0, -1.0, -1.0 + 1e-10}, 1e-9, &ties) == 1);
  CHECK(ties == std::vector<std::size_t>{1, 2});
  CHECK(argmax_smallest({-5.0, -1.0, -1.0 + 1e-6}, 1e-9, &ties) == 2);
  CHECK(ties == std::vector<std::size_t>{2});
  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK(argmax_smallest({ninf, 3.0}, 1e-9) == 1);
  CHECK_THROWS_AS(argmax_smallest({}, 1e-9), std::invalid_argument);
}

TEST_CASE("identical evidences select k = 1") {
  // Penalty strictly increasing: equal log p_k values leave k = 1 on top.
  std::vector<double> scores;
  for (int k = 1; k <= 5; ++k) scores.push_back(-10.0 - penalty(k, 20));
  CHECK(argmax_smallest(scores, 1e-9) == 0);
}

TEST_CASE("single node") {
  const SelectionReport r = select_k(net({{0}}), 1);
  CHECK(r.k_hat == 1);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].score == doctest::Approx(0.5 * std::log(2.0 / 3.0) - 4.0 * std::log(2.0)));
  CHECK(r.ties == std::vector<int>{1});
}

TEST_CASE("rows are internally consistent and match the oracle") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    GeneratorConfig cfg;
    cfg.n = 7;
    cfg.k0 = 1 + static_cast<int>(seed % 2);
    cfg.seed = seed;
    const Network x = generate(cfg).network;
    const SelectionReport r = select_k(x, 3);
    CHECK(r.n == 7);
    CHECK(r.backend == EvidenceBackend::kExact);
    double best = -std::numeric_limits<double>::infinity();
    int best_k = 0;
    for (const SelectionRow& row : r.rows) {
      CHECK(row.score == row.evidence.log_p - row.penalty);
      const double oracle_score = oracle::log_evidence(x, row.k) - oracle::penalty(row.k, 7);
      CHECK(std::abs(row.score - oracle_score) < 1e-9);
      if (oracle_score > best + 1e-9) {
        best = oracle_score;
        best_k = row.k;
      }
    }
    CHECK(r.k_hat == best_k);
  }
}

TEST_CASE("k_hat is invariant under node permutation") {
  Rng rng(2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GeneratorConfig cfg;
    cfg.n = 7;
    cfg.k0 = 2;
    cfg.seed = 100 + seed;
    const Network x = generate(cfg).network;
    const Network y = testing::permute(x, testing::random_permutation(7, rng));
    CHECK(select_k(x, 3).k_hat == select_k(y, 3).k_hat);
  }
}

TEST_CASE("argument checks and budgets") {
  const Network x = Network::empty(4);
  CHECK_THROWS_AS(select_k(x, 0), std::invalid_argument);
  CHECK_THROWS_AS(select_k(x, 5), std::invalid_argument);
  CHECK_THROWS_AS(select_k(Network::empty(0), 1), std::invalid_argument);

  Rng rng(3);
  const Network y = testing::random_network(12, 2, rng);
  SelectionOptions opts;
  opts.exact.budget = 5000;
  CHECK_THROWS_AS(select_k(y, 4, opts), BudgetExceeded);
  opts.allow_partial = true;
  const SelectionReport r = select_k(y, 4, opts);
  CHECK(r.rows[0].feasible);
  CHECK(r.rows[1].feasible);
  CHECK_FALSE(r.rows[2].feasible);
  CHECK_FALSE(r.rows[3].feasible);
  CHECK(r.rows[3].score == -std::numeric_limits<double>::infinity());
  CHECK(r.warnings.size() == 2);
  CHECK(r.k_hat <= 2);
}

TEST_CASE("bracket backend") {
  GeneratorConfig cfg;
  cfg.n = 30;
  cfg.k0 = 2;
  cfg.seed = 5;
  const Network x = generate(cfg).network;
  SelectionOptions opts;
  opts.backend = EvidenceBackend::kBracket;
  opts.seed = 9;
  const SelectionReport a = select_k(x, 4, opts);
  const SelectionReport b = select_k(x, 4, opts);
  CHECK(a.k_hat == b.k_hat);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].score == b.rows[i].score);
    CHECK(a.rows[i].score == a.rows[i].evidence.lower - a.rows[i].penalty);
    CHECK(a.rows[i].evidence.lower <= a.rows[i].evidence.upper);
  }
  CHECK(a.rows[0].evidence.rigorous);
  // The overlap list names exactly the orders whose score brackets meet the
  // winner's.
  const SelectionRow& w = a.rows[static_cast<std::size_t>(a.k_hat - 1)];
  std::vector<int> expected;
  for (const SelectionRow& row : a.rows) {
    if (row.k == a.k_hat) continue;
    if (row.evidence.lower - row.penalty <= w.evidence.upper - w.penalty &&
        w.evidence.lower - w.penalty <= row.evidence.upper - row.penalty) {
      expected.push_back(row.k);
    }
  }
  CHECK(a.overlaps == expected);
}

}  // TEST_SUITE
