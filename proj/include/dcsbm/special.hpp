#ifndef DCSBM_SPECIAL_HPP
#define DCSBM_SPECIAL_HPP

#include <cmath>
#include <limits>

namespace dcsbm {

/// ln Gamma(x) for x > 0. Reentrant, so safe to call from worker threads.
double log_gamma(double x);

inline double log_factorial(double m) { return log_gamma(m + 1.0); }

/// ln Gamma(1/2) = ln(sqrt(pi)).
inline constexpr double kLogGammaHalf = 0.57236494292470008707171367567653;

/// a * ln(b) with the convention 0 * ln(0) = 0.
inline double xlogy(double a, double b) {
  return a == 0.0 ? 0.0 : a * std::log(b);
}

/// u * ln(u) with 0 ln 0 = 0.
inline double xlogx(double u) { return xlogy(u, u); }

/// Streaming log-sum-exp. Terms equal to -inf are ignored.
class LogSumExp {
 public:
  void add(double v) {
    if (v == -std::numeric_limits<double>::infinity()) return;
    if (v <= max_) {
      sum_ += std::exp(v - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - v) + 1.0;
      max_ = v;
    }
  }

  void merge(const LogSumExp& other) {
    if (other.sum_ == 0.0) return;
    if (sum_ == 0.0) {
      *this = other;
      return;
    }
    if (other.max_ <= max_) {
      sum_ += other.sum_ * std::exp(other.max_ - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - other.max_) + other.sum_;
      max_ = other.max_;
    }
  }

  double value() const {
    return sum_ == 0.0 ? -std::numeric_limits<double>::infinity()
                       : max_ + std::log(sum_);
  }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

}  // namespace dcsbm

#endif  // DCSBM_SPECIAL_HPP
