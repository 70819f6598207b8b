#include "urn/analytic.hpp"

#include <stdexcept>
#include <string>

#include "urn/error.hpp"
#include "urn/special.hpp"

namespace urn {

namespace {

void require_counts(std::uint64_t b, std::uint64_t w) {
  if (b == 0 || w == 0) throw UrnError(ErrorKind::Domain, "b and w must be >= 1");
}

constexpr double kTruncationMass = 1e-15;
constexpr std::uint64_t kTruncationPairs = 1'000'000;

}  // namespace

MixtureWeights mixture_weights(std::uint64_t b, std::uint64_t w, const Params& params) {
  require_supercritical(params, "mixture_weights");
  require_counts(b, w);
  const double g = params.gamma();
  const double gb = std::pow(g, static_cast<double>(b));
  const double gw = std::pow(g, static_cast<double>(w));
  const double bd = static_cast<double>(b);
  const double wd = static_cast<double>(w);
  return {gb * (1.0 - bd / (bd + wd) * gw), (1.0 - gb) * (1.0 - gw),
          gw * (1.0 - wd / (bd + wd) * gb)};
}

std::vector<double> survivor_pmf(std::uint64_t m, const Params& params) {
  require_supercritical(params, "survivor_pmf");
  if (m == 0) throw UrnError(ErrorKind::Domain, "survivor_pmf needs m >= 1");
  const double g = params.gamma();
  const double norm = -std::expm1(static_cast<double>(m) * std::log(g));
  std::vector<double> pmf(m);
  for (std::uint64_t k = 1; k <= m; ++k) pmf[k - 1] = binom_pmf(k, m, 1.0 - g) / norm;
  return pmf;
}

LimitMixture::LimitMixture(std::uint64_t b, std::uint64_t w, const Params& params)
    : b_(b),
      w_(w),
      params_(params),
      weights_(mixture_weights(b, w, params)),
      g_pmf_(survivor_pmf(b, params)),
      h_pmf_(survivor_pmf(w, params)) {
  if (b * w > kTruncationPairs) {
    for (double gk : g_pmf_) {
      for (double hl : h_pmf_) {
        if (gk * hl < kTruncationMass) truncation_bound_ += gk * hl;
      }
    }
  }
}

double LimitMixture::continuous_cdf(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw UrnError(ErrorKind::Domain, "x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const bool truncate = b_ * w_ > kTruncationPairs;
  double sum = 0.0;
  for (std::uint64_t k = 1; k <= b_; ++k) {
    const double gk = g_pmf_[k - 1];
    if (gk == 0.0) continue;
    for (std::uint64_t l = 1; l <= w_; ++l) {
      const double mass = gk * h_pmf_[l - 1];
      if (mass == 0.0 || (truncate && mass < kTruncationMass)) continue;
      sum += mass * reg_inc_beta(x, k, l);
    }
  }
  return sum;
}

double LimitMixture::cdf(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw UrnError(ErrorKind::Domain, "x must lie in [0, 1]");
  if (x == 1.0) return 1.0;
  return weights_.atom_zero + weights_.continuous * continuous_cdf(x);
}

double limit_cdf(std::uint64_t b, std::uint64_t w, const Params& params, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw UrnError(ErrorKind::Domain, "x must lie in [0, 1]");
  return LimitMixture(b, w, params).cdf(x);
}

double equalization_prob(std::uint64_t b, std::uint64_t w, const Params& params) {
  require_supercritical(params, "equalization_prob");
  if (w == 0 || b <= w) {
    throw UrnError(ErrorKind::OrderViolation,
                   "equalization_prob needs b > w >= 1, got b=" + std::to_string(b) +
                       " w=" + std::to_string(w));
  }
  return 2.0 * limit_cdf(b, w, params, 0.5);
}

double equalization_bound(std::uint64_t b, const Params& params) {
  require_supercritical(params, "equalization_bound");
  if (b == 0) throw UrnError(ErrorKind::Domain, "equalization_bound needs b >= 1");
  return 2.0 * std::pow(2.0 * params.p(), -static_cast<double>(b));
}

double single_colour_limit_cdf(const Params& params, double x) {
  require_supercritical(params, "single_colour_limit_cdf");
  if (!(x >= 0.0)) throw UrnError(ErrorKind::Domain, "x must be non-negative");
  const double g = params.gamma();
  return g + (1.0 - g) * -std::expm1(-x / params.beta());
}

double sample_single_colour_limit(const Params& params, RngStream& rng) {
  require_supercritical(params, "sample_single_colour_limit");
  if (rng.bernoulli(params.gamma())) return 0.0;
  return rng.exponential(1.0 / params.beta());
}

double sample_T_iterate(const Params& params, unsigned iterations, RngStream& rng) {
  if (iterations == 0) return 1.0;
  return apply_T([&](RngStream& r) { return sample_T_iterate(params, iterations - 1, r); },
                 params, rng);
}

double contraction_second_moment(const Params& params) {
  require_supercritical(params, "contraction_factor");
  return 2.0 * params.p() / (4.0 * params.p() - 1.0);
}

double contraction_factor(const Params& params) {
  const double factor = std::sqrt(contraction_second_moment(params));
  if (!(factor < 1.0)) throw std::logic_error("contraction factor must be below 1");
  return factor;
}

}  // namespace urn
