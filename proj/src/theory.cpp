#include "dcsbm/theory.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "dcsbm/likelihood.hpp"
#include "dcsbm/marginal.hpp"
#include "dcsbm/special.hpp"

namespace dcsbm {
namespace {

std::string describe(const std::vector<int>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string describe(const Network& x, const Labels& z) {
  std::ostringstream os;
  os << "n=" << x.size() << " k=" << z.k << " z=" << describe(z.z) << " x=[";
  for (int i = 0; i < x.size(); ++i) {
    os << (i ? ";" : "");
    for (int j = 0; j < x.size(); ++j) os << (j ? "," : "") << x(i, j);
  }
  os << ']';
  return os.str();
}

std::string describe(const Eigen::MatrixXd& m) {
  Eigen::IOFormat fmt(Eigen::FullPrecision, Eigen::DontAlignCols, ",", ";", "",
                      "", "[", "]");
  std::ostringstream os;
  os << m.format(fmt);
  return os.str();
}

void record(SweepSummary& s, const CheckResult& r) {
  if (s.cases == 0 || r.margin < s.worst_margin) s.worst_margin = r.margin;
  ++s.cases;
  if (!r.holds) {
    ++s.failures;
    if (s.witness.empty()) s.witness = r.witness;
  }
}

Labels random_labels(int n, int k, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, k - 1);
  std::vector<int> z(static_cast<std::size_t>(n));
  for (auto& label : z) label = pick(rng);
  return Labels(std::move(z), k);
}

Eigen::VectorXd random_simplex_point(int k, double floor, Rng& rng) {
  for (;;) {
    Eigen::VectorXd pi = sample_dirichlet(k, 1.0, rng);
    if (pi.minCoeff() >= floor) return pi;
  }
}

Eigen::MatrixXd random_identifiable_rates(int k, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.2, 5.0);
  for (;;) {
    Eigen::MatrixXd lambda(k, k);
    for (int a = 0; a < k; ++a) {
      for (int b = a; b < k; ++b) lambda(a, b) = lambda(b, a) = unif(rng);
    }
    if (min_column_cosine_distance(lambda) >= 0.05) return lambda;
  }
}

// Symmetric positive rates whose last two columns are proportional.
Eigen::MatrixXd random_proportional_rates(int k, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.2, 3.0);
  if (k == 2) {
    const Eigen::Vector2d u(unif(rng), unif(rng));
    return unif(rng) * u * u.transpose();
  }
  const double r = unif(rng);
  const double s = unif(rng);
  const double t = unif(rng);
  Eigen::MatrixXd lambda(3, 3);
  lambda << unif(rng), r * t, t,
            r * t, r * r * s, r * s,
            t, r * s, s;
  return lambda;
}

}  // namespace

CheckResult make_check(std::string name, double margin, std::string witness) {
  return CheckResult{std::move(name), margin >= -kCheckTolerance, margin,
                     std::move(witness)};
}

CheckResult check_gamma_partition(const std::vector<int>& parts) {
  long long total = 0;
  for (int m : parts) {
    if (m < 0) throw std::invalid_argument("partition parts must be >= 0");
    total += m;
  }
  if (total < 1 || parts.empty()) {
    throw std::invalid_argument("partition must sum to at least 1");
  }
  const double m = static_cast<double>(total);
  double lhs = 0.0;
  for (int part : parts) {
    const double mj = part;
    lhs += xlogy(mj, mj / m) - log_gamma(mj + 0.5);
  }
  const double rhs = -log_gamma(m + 0.5) -
                     static_cast<double>(parts.size() - 1) * kLogGammaHalf;
  return make_check("gamma_partition", rhs - lhs, describe(parts));
}

CheckResult check_gamma_ratio(int m, int J) {
  if (J < 1 || m < std::max(J, 3)) {
    throw std::invalid_argument("gamma ratio bound needs J >= 1 and m >= max(J, 3)");
  }
  const double md = m;
  const double jd = J;
  const double log_ratio = kLogGammaHalf + log_gamma(md + 0.5 * jd) -
                           log_gamma(0.5 * jd) - log_gamma(md + 0.5);
  return make_check("gamma_ratio", jd * std::log(md) - log_ratio,
                    "m=" + std::to_string(m) + " J=" + std::to_string(J));
}

RatioChecks check_ratio_bounds(const Network& x, const Labels& z) {
  const int n = x.size();
  if (n < 3) throw std::invalid_argument("ratio bounds need n >= 3");
  if (!omega_membership(x)) {
    throw std::invalid_argument("ratio bounds need every x_ij <= ln n");
  }
  const EvidenceTerms avg = log_abc(x, z);
  const EvidenceTerms sup = log_abc_hat(x, z);
  const double nd = n;
  const double k = z.k;
  const std::string witness = describe(x, z);

  RatioChecks r;
  r.log_ratio_a = sup.log_a - avg.log_a;
  r.log_ratio_b = sup.log_b - avg.log_b;
  r.log_ratio_c = sup.log_c - avg.log_c;
  r.a = make_check("ratio_a", k * (k + 1) * std::log1p(nd) - r.log_ratio_a, witness);
  r.b = make_check("ratio_b",
                   nd * (2.0 * std::log(nd) + std::log(std::log(nd))) - r.log_ratio_b,
                   witness);
  r.c = make_check("ratio_c", k * std::log(nd) - r.log_ratio_c, witness);
  return r;
}

Deviation concentration_deviation(const Network& x, const Labels& z0,
                                  const Labels& z_bar, const ModelParams& params) {
  const int n = x.size();
  if (z0.size() != n || z_bar.size() != n || params.weights.size() != n ||
      params.lambda_tilde.rows() != z0.k || params.lambda_tilde.cols() != z0.k) {
    throw std::invalid_argument("concentration_deviation: dimension mismatch");
  }
  const SuffStats s = compute_stats(x, z_bar);
  const Eigen::MatrixXd q = q_matrix<double>(z_bar, z0, params.weights);
  const Eigen::MatrixXd expected = q * params.lambda_tilde * q.transpose();
  const double scale = params.rho * static_cast<double>(n) * static_cast<double>(n);

  Deviation d;
  d.block = (s.block_counts.cast<double>() / scale - expected).cwiseAbs();
  d.degree =
      (s.block_degree.cast<double>() / scale - expected.rowwise().sum()).cwiseAbs();
  return d;
}

double min_column_cosine_distance(const Eigen::MatrixXd& lambda) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < lambda.cols(); ++a) {
    for (Eigen::Index b = a + 1; b < lambda.cols(); ++b) {
      const double cos = lambda.col(a).dot(lambda.col(b)) /
                         (lambda.col(a).norm() * lambda.col(b).norm());
      best = std::min(best, 1.0 - cos);
    }
  }
  return best;
}

Network random_good_network(int n, Rng& rng) {
  const Count limit =
      n <= 1 ? 0 : static_cast<Count>(std::floor(std::log(static_cast<double>(n))));
  std::uniform_int_distribution<Count> off(0, limit);
  std::uniform_int_distribution<Count> loops(0, limit / 2);
  CountMatrix x(n, n);
  for (int i = 0; i < n; ++i) {
    x(i, i) = 2 * loops(rng);
    for (int j = i + 1; j < n; ++j) x(i, j) = x(j, i) = off(rng);
  }
  return Network(std::move(x));
}

std::vector<SweepSummary> run_theory_sweeps(std::uint64_t seed) {
  std::vector<SweepSummary> out;
  Rng rng(seed);

  {
    SweepSummary s{"gamma_partition (1000 random, m<=50, J<=10)", 0, 0, 0.0, {}};
    std::uniform_int_distribution<int> pick_j(1, 10);
    std::uniform_int_distribution<int> pick_m(1, 50);
    for (int t = 0; t < 1000; ++t) {
      const int J = pick_j(rng);
      const int m = pick_m(rng);
      std::vector<int> parts(static_cast<std::size_t>(J), 0);
      std::uniform_int_distribution<int> bin(0, J - 1);
      for (int ball = 0; ball < m; ++ball) ++parts[static_cast<std::size_t>(bin(rng))];
      record(s, check_gamma_partition(parts));
    }
    out.push_back(std::move(s));

    SweepSummary eq{"gamma_partition J=1 equality (m<=50)", 0, 0, 0.0, {}};
    for (int m = 1; m <= 50; ++m) {
      const CheckResult r = check_gamma_partition({m});
      record(eq, make_check(r.name, 1e-12 - std::abs(r.margin) - kCheckTolerance,
                            r.witness));
    }
    out.push_back(std::move(eq));
  }

  {
    SweepSummary s{"gamma_ratio (all m<=200, J<=m, m>=max(J,3))", 0, 0, 0.0, {}};
    for (int m = 3; m <= 200; ++m) {
      for (int J = 1; J <= m; ++J) record(s, check_gamma_ratio(m, J));
    }
    out.push_back(std::move(s));
  }

  {
    SweepSummary upper{"ratio bounds A^/A, B^/B, C^/C (1000 random x in Omega_n)", 0, 0, 0.0, {}};
    SweepSummary lower{"ratios >= 1 (1000 random x in Omega_n)", 0, 0, 0.0, {}};
    std::uniform_int_distribution<int> pick_n(3, 8);
    std::uniform_int_distribution<int> pick_k(1, 3);
    for (int t = 0; t < 1000; ++t) {
      const int n = pick_n(rng);
      const int k = pick_k(rng);
      const Network x = random_good_network(n, rng);
      const Labels z = random_labels(n, k, rng);
      const RatioChecks r = check_ratio_bounds(x, z);
      const double worst = std::min({r.a.margin, r.b.margin, r.c.margin});
      record(upper, make_check("ratio_bounds", worst, r.a.witness));
      const double floor =
          std::min({r.log_ratio_a, r.log_ratio_b, r.log_ratio_c});
      record(lower, make_check("ratio_floor", floor, r.a.witness));
    }
    out.push_back(std::move(upper));
    out.push_back(std::move(lower));
  }

  {
    SweepSummary lo{"sup vs evidence sums: lower side (200 random x in Omega_n)", 0, 0, 0.0, {}};
    SweepSummary hi{"sup vs evidence sums: k(k+2)ln(n+1)+3n ln n (200 random)", 0, 0, 0.0, {}};
    std::uniform_int_distribution<int> pick_n(3, 8);
    std::uniform_int_distribution<int> pick_k(1, 3);
    for (int t = 0; t < 200; ++t) {
      const int n = pick_n(rng);
      const int k = pick_k(rng);
      const Network x = random_good_network(n, rng);
      const double gap = log_sum_sup(x, k) - log_marginal_exact(x, k).log_p;
      const double bound = k * (k + 2) * std::log1p(n) + 3.0 * n * std::log(n);
      const std::string w = describe(x, Labels::constant(n, k));
      record(lo, make_check("prop_lower", gap, w));
      record(hi, make_check("prop_upper", bound - gap, w));
    }
    out.push_back(std::move(lo));
    out.push_back(std::move(hi));
  }

  {
    SweepSummary pos{"identifiability gap > 1e-6 (100 random identifiable)", 0, 0, 0.0, {}};
    SweepSummary zero{"identifiability gap == 0 (20 proportional columns)", 0, 0, 0.0, {}};
    std::uniform_int_distribution<int> pick_k0(2, 3);
    for (int t = 0; t < 100; ++t) {
      const int k0 = pick_k0(rng);
      const Eigen::VectorXd pi = random_simplex_point(k0, 0.1, rng);
      const Eigen::MatrixXd lambda = random_identifiable_rates(k0, rng);
      const double gap = identifiability_gap<double>(pi, lambda, k0 - 1);
      record(pos, make_check("gap_positive", gap - 1e-6 - kCheckTolerance,
                             describe(lambda)));
    }
    for (int t = 0; t < 20; ++t) {
      const int k0 = 2 + t % 2;
      const Eigen::VectorXd pi = random_simplex_point(k0, 0.1, rng);
      const Eigen::MatrixXd lambda = random_proportional_rates(k0, rng);
      const double gap = identifiability_gap<double>(pi, lambda, k0 - 1);
      record(zero, make_check("gap_zero", 1e-10 - std::abs(gap) - kCheckTolerance,
                              describe(lambda)));
    }
    out.push_back(std::move(pos));
    out.push_back(std::move(zero));
  }

  {
    SweepSummary s{"Q matrix normalization and marginals (200 random)", 0, 0, 0.0, {}};
    std::uniform_int_distribution<int> pick_n(1, 40);
    std::uniform_int_distribution<int> pick_k(1, 4);
    for (int t = 0; t < 200; ++t) {
      const int n = pick_n(rng);
      const Labels z0 = random_labels(n, pick_k(rng), rng);
      const Labels zb = random_labels(n, pick_k(rng), rng);
      const Eigen::VectorXd w = sample_weights(z0, WeightMode::kDirichlet, rng);
      const Eigen::MatrixXd q = q_matrix<double>(zb, z0, w);
      double err = std::abs(q.sum() - 1.0);
      const Eigen::VectorXd sizes = compute_stats(Network::empty(n), z0)
                                        .community_size.cast<double>();
      err = std::max(err, (n * q.colwise().sum().transpose() - sizes)
                              .cwiseAbs()
                              .maxCoeff() / n);
      record(s, make_check("q_matrix", 1e-12 - err - kCheckTolerance,
                           "n=" + std::to_string(n)));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace dcsbm
