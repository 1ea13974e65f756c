#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "dcsbm/special.hpp"

using namespace dcsbm;

TEST_SUITE("special") {

TEST_CASE("log_gamma at known points") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_gamma(0.5) == doctest::Approx(std::log(std::sqrt(M_PI))).epsilon(1e-14));
  CHECK(log_gamma(0.5) == doctest::Approx(kLogGammaHalf).epsilon(1e-15));
  CHECK(log_gamma(1.5) == doctest::Approx(std::log(std::sqrt(M_PI) / 2)).epsilon(1e-14));
  CHECK(log_gamma(3.5) == doctest::Approx(std::log(15.0 / 8.0 * std::sqrt(M_PI))).epsilon(1e-14));
  // ln 20! = 42.335616460753485...
  CHECK(log_factorial(20) == doctest::Approx(42.335616460753485).epsilon(1e-14));
  // Stirling series at a large argument.
  const double x = 1e6;
  const double stirling = (x - 0.5) * std::log(x) - x + 0.5 * std::log(2 * M_PI) +
                          1.0 / (12 * x) - 1.0 / (360 * x * x * x);
  CHECK(log_gamma(x) == doctest::Approx(stirling).epsilon(1e-14));
}

TEST_CASE("log_factorial matches summed logs") {
  double acc = 0.0;
  for (int m = 1; m <= 170; ++m) {
    acc += std::log(static_cast<double>(m));
    CHECK(log_factorial(m) == doctest::Approx(acc).epsilon(1e-12));
  }
  CHECK(log_factorial(0) == 0.0);
}

TEST_CASE("xlogy conventions") {
  CHECK(xlogy(0.0, 0.0) == 0.0);
  CHECK(xlogx(0.0) == 0.0);
  CHECK(xlogx(1.0) == 0.0);
  CHECK(xlogy(2.0, std::exp(1.0)) == doctest::Approx(2.0));
}

TEST_CASE("LogSumExp") {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  LogSumExp empty;
  CHECK(empty.value() == kNegInf);

  LogSumExp acc;
  acc.add(std::log(1.0));
  acc.add(kNegInf);
  acc.add(std::log(2.0));
  acc.add(std::log(3.0));
  CHECK(acc.value() == doctest::Approx(std::log(6.0)).epsilon(1e-15));

  LogSumExp big;
  big.add(1000.0);
  big.add(1000.0);
  CHECK(big.value() == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-15));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 50.0);
  std::vector<double> terms(500);
  for (auto& t : terms) t = gauss(rng);
  LogSumExp forward;
  for (double t : terms) forward.add(t);
  std::reverse(terms.begin(), terms.end());
  LogSumExp left;
  LogSumExp right;
  for (std::size_t i = 0; i < terms.size(); ++i) (i % 2 ? left : right).add(terms[i]);
  left.merge(right);
  CHECK(std::abs(left.value() - forward.value()) < 1e-9);

  LogSumExp a;
  a.merge(empty);
  CHECK(a.value() == kNegInf);
  a.merge(forward);
  CHECK(a.value() == forward.value());
}

}  // TEST_SUITE
