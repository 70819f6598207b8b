#include "urn/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "urn/error.hpp"
#include "urn/parallel.hpp"
#include "urn/rng.hpp"
#include "urn/two_colour.hpp"

namespace urn {

double z_for_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw UrnError(ErrorKind::Domain, "confidence level must lie in (0, 1)");
  }
  // Solve erfc(z / sqrt 2) = 1 - level by bisection; erfc is decreasing.
  const double tail = 1.0 - level;
  double lo = 0.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::erfc(mid / std::sqrt(2.0)) > tail) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0 || successes > trials) {
    throw UrnError(ErrorKind::Domain, "wilson_interval needs 0 <= successes <= trials, trials >= 1");
  }
  if (!(z >= 0.0)) throw UrnError(ErrorKind::Domain, "wilson_interval needs z >= 0");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  Interval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (successes == 0) ci.low = 0.0;
  if (successes == trials) ci.high = 1.0;
  // Guard the ordering against rounding at the extremes.
  ci.low = std::min(ci.low, phat);
  ci.high = std::max(ci.high, phat);
  return ci;
}

Estimate proportion_estimate(std::uint64_t successes, std::uint64_t trials, double level) {
  const Interval ci = wilson_interval(successes, trials, z_for_level(level));
  return {static_cast<double>(successes) / static_cast<double>(trials), ci.low, ci.high, trials,
          level, "wilson"};
}

Estimate mc_equalization(const Params& params, std::uint64_t b, std::uint64_t w,
                         std::uint64_t trials, std::uint64_t max_steps, std::uint64_t seed,
                         unsigned workers, double level) {
  if (w == 0 || b <= w) {
    throw UrnError(ErrorKind::OrderViolation, "mc_equalization needs b > w >= 1");
  }
  if (trials == 0) throw UrnError(ErrorKind::Domain, "mc_equalization needs trials >= 1");
  const auto hits = run_trials(trials, workers, [&](std::uint64_t i) -> char {
    RngStream rng(seed, i);
    return run_two_colour(params, b, w, max_steps, rng).equalization_count > 0;
  });
  const auto successes = static_cast<std::uint64_t>(std::count(hits.begin(), hits.end(), 1));
  return proportion_estimate(successes, trials, level);
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw UrnError(ErrorKind::EmptySample, "ks_statistic on empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double v = sorted[i];
    const double below = static_cast<double>(i) / n;
    while (i < sorted.size() && sorted[i] == v) ++i;
    const double at = static_cast<double>(i) / n;
    // Left limit of F taken just below v so atoms in the reference are matched.
    const double f_left = cdf(std::nextafter(v, -std::numeric_limits<double>::infinity()));
    d = std::max({d, at - cdf(v), f_left - below});
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw UrnError(ErrorKind::EmptySample, "ks_two_sample on empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sa.size() || j < sb.size()) {
    double v;
    if (j == sb.size() || (i < sa.size() && sa[i] <= sb[j])) v = sa[i];
    else v = sb[j];
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_threshold(std::uint64_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

double ks_threshold(std::uint64_t n, std::uint64_t m) {
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return 1.63 * std::sqrt((nd + md) / (nd * md));
}

double empirical_wasserstein1(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw UrnError(ErrorKind::SizeMismatch, "empirical_wasserstein1 needs equal sample sizes");
  }
  if (a.empty()) throw UrnError(ErrorKind::EmptySample, "empirical_wasserstein1 on empty samples");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) sum += std::fabs(sa[i] - sb[i]);
  return sum / static_cast<double>(sa.size());
}

ExponentFit growth_exponent(std::span<const Trajectory> trajectories, std::uint64_t n_min) {
  if (trajectories.size() < 10) {
    throw UrnError(ErrorKind::InsufficientData, "growth_exponent needs >= 10 trajectories");
  }
  struct Point {
    double x;
    double y;
  };
  std::vector<std::vector<Point>> clusters;
  clusters.reserve(trajectories.size());
  ExponentFit fit;
  fit.n_min = n_min;
  for (const Trajectory& t : trajectories) {
    auto& pts = clusters.emplace_back();
    for (const TrajectoryRecord& r : t.records) {
      if (r.n < n_min) continue;
      pts.push_back({std::log(static_cast<double>(r.total)),
                     std::log(static_cast<double>(r.leader_count))});
      fit.n_max = std::max(fit.n_max, r.n);
    }
    if (pts.size() < 5) {
      throw UrnError(ErrorKind::InsufficientData,
                     "growth_exponent needs >= 5 records with n >= n_min per trajectory");
    }
    fit.n_points += pts.size();
  }

  const double count = static_cast<double>(fit.n_points);
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& pts : clusters) {
    for (const Point& pt : pts) {
      mean_x += pt.x;
      mean_y += pt.y;
    }
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& pts : clusters) {
    for (const Point& pt : pts) {
      sxx += (pt.x - mean_x) * (pt.x - mean_x);
      sxy += (pt.x - mean_x) * (pt.y - mean_y);
    }
  }
  if (!(sxx > 0.0)) {
    throw UrnError(ErrorKind::InsufficientData, "growth_exponent needs spread in log N");
  }
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;

  // Records of one trajectory are strongly dependent, so the slope variance is
  // estimated with trajectories as independent clusters.
  double meat = 0.0;
  for (const auto& pts : clusters) {
    double score = 0.0;
    for (const Point& pt : pts) {
      const double resid = pt.y - fit.intercept - fit.slope * pt.x;
      score += (pt.x - mean_x) * resid;
    }
    meat += score * score;
  }
  const double groups = static_cast<double>(clusters.size());
  fit.std_error = std::sqrt(groups / (groups - 1.0) * meat) / sxx;
  return fit;
}

DominanceReport dominance_report(std::span<const Trajectory> trajectories) {
  if (trajectories.size() < 10) {
    throw UrnError(ErrorKind::InsufficientData, "dominance_report needs >= 10 trajectories");
  }
  DominanceReport report;
  report.horizon = trajectories.front().steps;
  std::size_t stable = 0;
  for (const Trajectory& t : trajectories) {
    if (t.steps != report.horizon) {
      throw UrnError(ErrorKind::Domain, "dominance_report needs a common horizon");
    }
    const std::uint64_t last = t.leadership_changes.empty() ? 0 : t.leadership_changes.back();
    report.last_change.push_back(last);
    report.change_counts.push_back(t.leadership_changes.size());
    if (2 * last <= report.horizon) ++stable;
  }
  std::vector<std::uint64_t> sorted = report.last_change;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  report.median_last_change = m % 2 == 1
                                  ? static_cast<double>(sorted[m / 2])
                                  : 0.5 * static_cast<double>(sorted[m / 2 - 1] + sorted[m / 2]);
  report.stable_final_half = static_cast<double>(stable) / static_cast<double>(m);
  return report;
}

}  // namespace urn
