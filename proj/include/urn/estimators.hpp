#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "urn/discrete_urn.hpp"
#include "urn/params.hpp"

namespace urn {

/// Confidence level for every accept/reject gate.
inline constexpr double kGateLevel = 0.99;

struct Interval {
  double low;
  double high;
};

struct Estimate {
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t n_trials = 0;
  double level = kGateLevel;
  std::string method;

  bool covers(double value) const noexcept { return ci_low <= value && value <= ci_high; }
};

/// Two-sided standard normal quantile for a confidence level in (0, 1),
/// e.g. 0.99 -> 2.5758.
double z_for_level(double level);

/// Wilson score interval. Throws Domain unless 0 <= successes <= trials,
/// trials >= 1 and z >= 0.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

/// Wilson estimate of a proportion at the given level.
Estimate proportion_estimate(std::uint64_t successes, std::uint64_t trials,
                             double level = kGateLevel);

/// Fraction of two-colour runs from (b, w) that ever hit B_n = W_n. Trial i
/// uses stream (seed, i). Throws OrderViolation unless b > w >= 1, Domain when
/// trials == 0.
Estimate mc_equalization(const Params& params, std::uint64_t b, std::uint64_t w,
                         std::uint64_t trials, std::uint64_t max_steps, std::uint64_t seed,
                         unsigned workers = 1, double level = kGateLevel);

/// sup |F_n - F| over the sample. At each distinct sample value both one-sided
/// limits of F_n are compared with F and its left limit, so a reference with
/// atoms is handled. Throws EmptySample.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// sup |F_a - F_b| between two empirical CDFs; ties are resolved before
/// comparing, so shared atoms contribute nothing. Throws EmptySample.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// 1.63 / sqrt(n), the 99% one-sample threshold.
double ks_threshold(std::uint64_t n);
/// 1.63 sqrt((n + m) / (n m)), the 99% two-sample threshold.
double ks_threshold(std::uint64_t n, std::uint64_t m);

/// Mean absolute difference of sorted order statistics. Throws SizeMismatch on
/// unequal sizes and EmptySample on empty input.
double empirical_wasserstein1(std::span<const double> a, std::span<const double> b);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Cluster-robust standard error of the slope (trajectories as clusters).
  double std_error = 0.0;
  std::size_t n_points = 0;
  std::uint64_t n_min = 0;
  std::uint64_t n_max = 0;
};

/// Pooled least-squares fit of log M_n on log N_n over all records with
/// n >= n_min. Throws InsufficientData unless there are >= 10 trajectories,
/// each with >= 5 such records.
ExponentFit growth_exponent(std::span<const Trajectory> trajectories, std::uint64_t n_min);

struct DominanceReport {
  std::uint64_t horizon = 0;
  /// Step of the last leadership change per run; 0 if the leader never changed.
  std::vector<std::uint64_t> last_change;
  std::vector<std::uint64_t> change_counts;
  double median_last_change = 0.0;
  /// Runs whose last change is at or before horizon / 2.
  double stable_final_half = 0.0;
};

/// Throws InsufficientData for fewer than 10 trajectories and Domain when the
/// horizons differ.
DominanceReport dominance_report(std::span<const Trajectory> trajectories);

}  // namespace urn
