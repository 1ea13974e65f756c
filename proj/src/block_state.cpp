#include "block_state.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "dcsbm/special.hpp"

namespace dcsbm::detail {

NodeTerms::NodeTerms(const Network& x) : degree(x.counts().rowwise().sum()) {
  const int n = x.size();
  log_gamma_degree.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double d = static_cast<double>(degree(i));
    log_gamma_degree[static_cast<std::size_t>(i)] = log_gamma(d + 0.5);
    sum_dlogd += xlogx(d);
    const double loops = static_cast<double>(x(i, i) / 2);
    log_c += loops * std::numbers::ln2 + log_factorial(loops);
    for (int j = i + 1; j < n; ++j) {
      log_c += log_factorial(static_cast<double>(x(i, j)));
    }
  }
}

BlockState::BlockState(const Network& x, const NodeTerms& nodes, Labels z)
    : x_(x), nodes_(nodes), z_(std::move(z)) {
  check_labels(x, z_);
  const int n = x.size();
  const int k = z_.k;
  size_ = CountVector::Zero(k);
  block_ = CountMatrix::Zero(k, k);
  block_degree_ = CountVector::Zero(k);
  gamma_sum_.assign(static_cast<std::size_t>(k), 0.0);
  row_scratch_.assign(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < n; ++i) {
    const int a = z_[i];
    ++size_(a);
    block_degree_(a) += nodes_.degree(i);
    gamma_sum_[static_cast<std::size_t>(a)] +=
        nodes_.log_gamma_degree[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) block_(a, z_[j]) += x(i, j);
  }
}

void BlockState::move(int i, int to) {
  const int from = z_[i];
  if (from == to) return;
  const int n = x_.size();
  std::fill(row_scratch_.begin(), row_scratch_.end(), 0);
  const auto column = x_.counts().col(i);
  for (int j = 0; j < n; ++j) {
    if (j != i) row_scratch_[static_cast<std::size_t>(z_[j])] += column(j);
  }
  for (int c = 0; c < z_.k; ++c) {
    const Count v = row_scratch_[static_cast<std::size_t>(c)];
    if (v == 0) continue;
    block_(from, c) -= v;
    block_(c, from) -= v;
    block_(to, c) += v;
    block_(c, to) += v;
  }
  const Count loop = column(i);
  block_(from, from) -= loop;
  block_(to, to) += loop;

  const Count d = nodes_.degree(i);
  const double g = nodes_.log_gamma_degree[static_cast<std::size_t>(i)];
  --size_(from);
  ++size_(to);
  block_degree_(from) -= d;
  block_degree_(to) += d;
  gamma_sum_[static_cast<std::size_t>(from)] -= g;
  gamma_sum_[static_cast<std::size_t>(to)] += g;
  z_.z[static_cast<std::size_t>(i)] = to;
}

double BlockState::log_a() const {
  const int k = z_.k;
  double total = -0.5 * k * (k + 1) * kLogGammaHalf;
  for (int a = 0; a < k; ++a) {
    const double na = static_cast<double>(size_(a));
    for (int b = a; b < k; ++b) {
      const double o = a == b ? static_cast<double>(block_(a, a) / 2)
                              : static_cast<double>(block_(a, b));
      const double pairs =
          a == b ? 0.5 * na * na : na * static_cast<double>(size_(b));
      total += log_gamma(o + 0.5) - (o + 0.5) * std::log1p(pairs);
    }
  }
  return total;
}

double BlockState::log_b() const {
  double total = 0.0;
  for (int a = 0; a < z_.k; ++a) {
    if (size_(a) == 0) continue;
    const double na = static_cast<double>(size_(a));
    const double dt = static_cast<double>(block_degree_(a));
    total += xlogy(dt, na) + log_gamma(0.5 * na) - na * kLogGammaHalf +
             gamma_sum_[static_cast<std::size_t>(a)] - log_gamma(dt + 0.5 * na);
  }
  return total;
}

double BlockState::log_c() const {
  const int k = z_.k;
  double total = log_gamma(0.5 * k) - k * kLogGammaHalf -
                 log_gamma(static_cast<double>(z_.size()) + 0.5 * k);
  for (int a = 0; a < k; ++a) {
    total += log_gamma(static_cast<double>(size_(a)) + 0.5);
  }
  return total;
}

double BlockState::log_evidence_term() const {
  return log_a() + log_b() + log_c();
}

double BlockState::log_a_hat() const {
  const int k = z_.k;
  double total = 0.0;
  for (int a = 0; a < k; ++a) {
    const double na = static_cast<double>(size_(a));
    for (int b = a; b < k; ++b) {
      const double o = a == b ? static_cast<double>(block_(a, a) / 2)
                              : static_cast<double>(block_(a, b));
      if (o == 0.0) continue;
      const double pairs =
          a == b ? 0.5 * na * na : na * static_cast<double>(size_(b));
      total += o * std::log(o / pairs) - o;
    }
  }
  return total;
}

double BlockState::log_b_hat() const {
  double total = nodes_.sum_dlogd;
  for (int a = 0; a < z_.k; ++a) {
    const double dt = static_cast<double>(block_degree_(a));
    if (dt == 0.0) continue;
    total += dt * std::log(static_cast<double>(size_(a)) / dt);
  }
  return total;
}

double BlockState::log_c_hat() const {
  const double n = static_cast<double>(z_.size());
  double total = 0.0;
  for (int a = 0; a < z_.k; ++a) {
    const double na = static_cast<double>(size_(a));
    total += xlogy(na, na / n);
  }
  return total;
}

double BlockState::log_sup_term() const {
  return log_a_hat() + log_b_hat() + log_c_hat();
}

}  // namespace dcsbm::detail
