#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <vector>

#include "urn/params.hpp"
#include "urn/rng.hpp"

namespace urn {

/// Weights of the two-colour limit law: an atom at 0, a continuous Beta
/// mixture on (0, 1), and an atom at 1.
struct MixtureWeights {
  double atom_zero;   // r_{b,w}
  double continuous;  // r*_{b,w}
  double atom_one;    // r_{w,b}
};

/// r_{b,w} = g^b (1 - b/(b+w) g^w), r* = (1 - g^b)(1 - g^w), r_{w,b} by
/// symmetry, with g = gamma. Requires b, w >= 1 and p > 1/2.
MixtureWeights mixture_weights(std::uint64_t b, std::uint64_t w, const Params& params);

/// Law of the number of surviving founders among m, conditioned on at least
/// one: entry k-1 is C(m,k)(1-g)^k g^(m-k) / (1 - g^m), k = 1..m.
std::vector<double> survivor_pmf(std::uint64_t m, const Params& params);

/// Limit law of B_n / (B_n + W_n) started from (b, w).
///
/// The continuous part is a Beta(G, H) mixture where G, H are the survivor
/// counts on each side. For b*w > 1e6 pairs whose joint mass is below 1e-15
/// are dropped and their total mass is reported in truncation_bound.
class LimitMixture {
 public:
  LimitMixture(std::uint64_t b, std::uint64_t w, const Params& params);

  std::uint64_t b() const noexcept { return b_; }
  std::uint64_t w() const noexcept { return w_; }
  const Params& params() const noexcept { return params_; }
  const MixtureWeights& weights() const noexcept { return weights_; }
  const std::vector<double>& g_pmf() const noexcept { return g_pmf_; }
  const std::vector<double>& h_pmf() const noexcept { return h_pmf_; }
  double truncation_bound() const noexcept { return truncation_bound_; }

  /// Right-continuous CDF: r_{b,w} at x = 0, exactly 1 at x = 1.
  double cdf(double x) const;
  /// CDF of the continuous Beta-mixture part alone, on [0, 1].
  double continuous_cdf(double x) const;

 private:
  std::uint64_t b_;
  std::uint64_t w_;
  Params params_;
  MixtureWeights weights_;
  std::vector<double> g_pmf_;
  std::vector<double> h_pmf_;
  double truncation_bound_ = 0.0;
};

double limit_cdf(std::uint64_t b, std::uint64_t w, const Params& params, double x);

/// Probability that B_n = W_n for some n, started from b > w >= 1:
/// twice the limit CDF at 1/2. Throws OrderViolation unless b > w.
double equalization_prob(std::uint64_t b, std::uint64_t w, const Params& params);

/// 2 (2p)^{-b}, an upper bound on equalization_prob(b, 1). Vacuous (> 1) for
/// small b near p = 1/2.
double equalization_bound(std::uint64_t b, const Params& params);

/// CDF of the single-colour limit: gamma + (1 - gamma)(1 - e^{-x/beta}).
double single_colour_limit_cdf(const Params& params, double x);

/// 0 with probability gamma, otherwise Exponential with rate 1/beta (mean beta).
double sample_single_colour_limit(const Params& params, RngStream& rng);

template <class F>
concept LimitSampler = std::invocable<F&, RngStream&> &&
                       std::convertible_to<std::invoke_result_t<F&, RngStream&>, double>;

/// One draw of T Z = e^{-(2p-1) tau} Y (Z' + Z'') with tau ~ Exp(1),
/// Y ~ Bernoulli(p) and Z', Z'' independent draws from `source`. The source is
/// not consulted when Y = 0.
template <LimitSampler Source>
double apply_T(Source&& source, const Params& params, RngStream& rng) {
  const double tau = rng.exponential(1.0);
  if (!rng.bernoulli(params.p())) return 0.0;
  const double first = source(rng);
  const double second = source(rng);
  return std::exp(-params.drift() * tau) * (first + second);
}

/// One exact draw of T^k applied to the point mass at 1, built from the
/// 2^k-leaf recursion tree.
double sample_T_iterate(const Params& params, unsigned iterations, RngStream& rng);

/// E[2 e^{-2(2p-1) tau} Y^2] = 2p / (4p - 1).
double contraction_second_moment(const Params& params);

/// sqrt(2p / (4p - 1)), the L2-Wasserstein Lipschitz constant of T; < 1 for
/// p > 1/2.
double contraction_factor(const Params& params);

}  // namespace urn
