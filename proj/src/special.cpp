#include "urn/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "urn/error.hpp"

namespace urn {

namespace {

constexpr double kLnSqrt2Pi = 0.918938533204672741780329736406;

// log(n!) - [(n + 1/2) log n - n + log sqrt(2 pi)], the Stirling remainder.
double stirling_error(double n) {
  constexpr double s0 = 1.0 / 12;
  constexpr double s1 = 1.0 / 360;
  constexpr double s2 = 1.0 / 1260;
  constexpr double s3 = 1.0 / 1680;
  constexpr double s4 = 1.0 / 1188;
  if (n <= 15.0) {
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - kLnSqrt2Pi;
  }
  const double nn = n * n;
  if (n > 500) return (s0 - s1 / nn) / n;
  if (n > 80) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x log(x / np) + np - x, computed without cancellation.
double deviance(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / np) + np - x;
}

}  // namespace

double binom_pmf(std::uint64_t k, std::uint64_t n, double q) {
  if (k > n) {
    throw UrnError(ErrorKind::Domain, "binom_pmf needs k <= n, got k=" + std::to_string(k) +
                                          " n=" + std::to_string(n));
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw UrnError(ErrorKind::Domain, "binom_pmf needs q in [0, 1]");
  }
  const double comp = 1.0 - q;
  if (q == 0.0) return k == 0 ? 1.0 : 0.0;
  if (comp == 0.0) return k == n ? 1.0 : 0.0;
  const auto nd = static_cast<double>(n);
  if (k == 0) return std::exp(nd * std::log1p(-q));
  if (k == n) return std::exp(nd * std::log(q));
  const auto kd = static_cast<double>(k);
  const double rest = nd - kd;
  const double log_core = stirling_error(nd) - stirling_error(kd) - stirling_error(rest) -
                          deviance(kd, nd * q) - deviance(rest, nd * comp);
  const double spread = 2.0 * std::numbers::pi * kd * rest / nd;
  return std::exp(log_core) / std::sqrt(spread);
}

double reg_inc_beta(double x, std::uint64_t a, std::uint64_t b) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw UrnError(ErrorKind::Domain, "reg_inc_beta needs x in [0, 1]");
  }
  if (a == 0 || b == 0) {
    throw UrnError(ErrorKind::Domain, "reg_inc_beta needs integer a, b >= 1");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const std::uint64_t n = a + b - 1;
  // Sum whichever binomial tail lies away from the mean; the other side is
  // its complement.
  if (static_cast<double>(a) >= static_cast<double>(n) * x) {
    double upper = 0.0;
    for (std::uint64_t j = n + 1; j-- > a;) upper += binom_pmf(j, n, x);
    return std::min(upper, 1.0);
  }
  double lower = 0.0;
  for (std::uint64_t j = 0; j < a; ++j) lower += binom_pmf(j, n, x);
  return std::max(0.0, 1.0 - lower);
}

}  // namespace urn
