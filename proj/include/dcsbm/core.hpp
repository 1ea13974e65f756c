#ifndef DCSBM_CORE_HPP
#define DCSBM_CORE_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace dcsbm {

using Count = std::int64_t;
using CountMatrix = Eigen::Matrix<Count, Eigen::Dynamic, Eigen::Dynamic>;
using CountVector = Eigen::Matrix<Count, Eigen::Dynamic, 1>;

/// Undirected multigraph on n nodes stored as a dense symmetric count matrix.
///
/// Off-diagonal entries are edge multiplicities. The diagonal holds twice the
/// number of self-loops, so it is always even and row sums are degrees.
class Network {
 public:
  Network() = default;
  /// Throws std::invalid_argument unless `counts` is square, symmetric,
  /// nonnegative and has an even diagonal.
  explicit Network(CountMatrix counts);

  static Network empty(int n);

  int size() const { return static_cast<int>(counts_.rows()); }
  Count operator()(int i, int j) const { return counts_(i, j); }
  const CountMatrix& counts() const { return counts_; }

  /// Sum over all ordered pairs (i, j), diagonal included.
  Count total() const { return counts_.sum(); }

  friend bool operator==(const Network& a, const Network& b) {
    return a.counts_ == b.counts_;
  }

 private:
  CountMatrix counts_;
};

/// Community assignment z in [k]^n, stored 0-based. Empty communities are
/// legal.
struct Labels {
  std::vector<int> z;
  int k = 1;

  Labels() = default;
  Labels(std::vector<int> z_, int k_);

  static Labels constant(int n, int k, int label = 0);

  int size() const { return static_cast<int>(z.size()); }
  int operator[](int i) const { return z[static_cast<std::size_t>(i)]; }

  friend bool operator==(const Labels&, const Labels&) = default;
};

/// Parameters (pi, lambda_tilde, rho, w). The effective rate matrix is
/// rho * lambda_tilde.
struct ModelParams {
  Eigen::VectorXd pi;
  Eigen::MatrixXd lambda_tilde;
  double rho = 1.0;
  Eigen::VectorXd weights;

  Eigen::MatrixXd rates() const { return rho * lambda_tilde; }
  int k() const { return static_cast<int>(pi.size()); }
};

/// Every counter of the likelihood for a fixed (x, z, k).
struct SuffStats {
  CountVector community_size;  // n_a
  Eigen::MatrixXd pairs;       // n_ab: n_a n_b off-diagonal, n_a^2 / 2 diagonal
  CountMatrix edges;           // o_ab, with o_aa = half the within-block sum
  CountMatrix block_counts;    // o~_ab, o~_aa = 2 o_aa
  CountVector degree;          // d_i
  CountVector block_degree;    // d^t_a

  int k() const { return static_cast<int>(community_size.size()); }
};

/// Throws std::invalid_argument on a size mismatch or an out-of-range label.
void check_labels(const Network& x, const Labels& z);

SuffStats compute_stats(const Network& x, const Labels& z);

/// True iff every entry satisfies x_ij <= ln(n).
bool omega_membership(const Network& x);

enum class ParamDomain {
  /// pi_a > 0 and lambda_tilde_ab > 0 as required of model parameters.
  kInterior,
  /// Allows zero probabilities and rates, as produced by maximum likelihood.
  kClosure,
};

/// Checks the parameter invariants against labels z, including per-community
/// weight sums w(a) == n_a within 1e-9. Throws std::invalid_argument on
/// dimension mismatch.
bool validate_params(const ModelParams& p, const Labels& z,
                     ParamDomain domain = ParamDomain::kInterior);

}  // namespace dcsbm

#endif  // DCSBM_CORE_HPP
