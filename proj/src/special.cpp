#include "dcsbm/special.hpp"

#include <math.h>

namespace dcsbm {

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

}  // namespace dcsbm
