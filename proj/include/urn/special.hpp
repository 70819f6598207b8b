#pragma once

#include <cstdint>

namespace urn {

/// C(n, k) q^k (1-q)^(n-k), evaluated in log space with the saddle-point
/// (Loader) decomposition so it stays accurate for n in the tens of
/// thousands. Throws Domain unless 0 <= k <= n and q in [0, 1].
double binom_pmf(std::uint64_t k, std::uint64_t n, double q);

/// Regularized incomplete beta I_x(a, b) for integer a, b >= 1, i.e. the
/// Beta(a, b) CDF at x, via the exact identity
///   I_x(a, b) = P[Binomial(a + b - 1, x) >= a].
/// Throws Domain outside 0 <= x <= 1, a, b >= 1.
double reg_inc_beta(double x, std::uint64_t a, std::uint64_t b);

}  // namespace urn
