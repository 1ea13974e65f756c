#ifndef DCSBM_TESTS_HELPERS_HPP
#define DCSBM_TESTS_HELPERS_HPP

#include <algorithm>
#include <initializer_list>
#include <random>
#include <vector>

#include "dcsbm/core.hpp"
#include "dcsbm/sampler.hpp"

namespace testing {

inline dcsbm::Network net(std::initializer_list<std::initializer_list<long>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  dcsbm::CountMatrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return dcsbm::Network(m);
}

/// Random symmetric network with off-diagonal entries in [0, max_entry] and
/// even diagonal entries in [0, max_entry].
inline dcsbm::Network random_network(int n, int max_entry, dcsbm::Rng& rng) {
  std::uniform_int_distribution<int> pick(0, max_entry);
  dcsbm::CountMatrix m = dcsbm::CountMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 2 * (pick(rng) / 2);
    for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = pick(rng);
  }
  return dcsbm::Network(m);
}

inline dcsbm::Labels random_labels(int n, int k, dcsbm::Rng& rng) {
  std::uniform_int_distribution<int> pick(0, k - 1);
  std::vector<int> z(static_cast<std::size_t>(n));
  for (auto& v : z) v = pick(rng);
  return dcsbm::Labels(z, k);
}

/// Relabels nodes: node i of the result is node perm[i] of x.
inline dcsbm::Network permute(const dcsbm::Network& x, const std::vector<int>& perm) {
  const int n = x.size();
  dcsbm::CountMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = x(perm[i], perm[j]);
  }
  return dcsbm::Network(m);
}

inline dcsbm::Labels permute(const dcsbm::Labels& z, const std::vector<int>& perm) {
  std::vector<int> out(z.z.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = z[perm[i]];
  return dcsbm::Labels(out, z.k);
}

inline std::vector<int> random_permutation(int n, dcsbm::Rng& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace testing

#endif  // DCSBM_TESTS_HELPERS_HPP
