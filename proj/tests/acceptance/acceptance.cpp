// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "urn/analytic.hpp"
#include "urn/birth_death.hpp"
#include "urn/discrete_urn.hpp"
#include "urn/estimators.hpp"
#include "urn/parallel.hpp"
#include "urn/special.hpp"
#include "urn/two_colour.hpp"
#include "urn/verify.hpp"

namespace {

using namespace urn;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 20261015;

unsigned workers() { return resolve_workers(0); }

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Sample variance and the standard error of that variance (fourth-moment form).
std::pair<double, double> variance_with_se(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double m = mean(xs);
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : xs) {
    const double d = (x - m) * (x - m);
    m2 += d;
    m4 += d * d;
  }
  const double var = m2 / (n - 1);
  return {var, std::sqrt((m4 / n - var * var) / n)};
}

std::vector<TwoColourOutcome> two_colour_batch(const Params& params, std::uint64_t b, std::uint64_t w,
                                               std::uint64_t trials, std::uint64_t steps) {
  return run_trials(trials, workers(), [&](std::uint64_t i) {
    RngStream rng(kSeed, i);
    return run_two_colour(params, b, w, steps, rng);
  });
}

Outcome classical_reduction() {
  const auto start = Clock::now();
  const auto runs = two_colour_batch(derive_params(1.0), 2, 3, 10'000, 100'000);
  std::vector<double> f;
  for (const auto& r : runs) f.push_back(r.final_fraction);
  const double ks = ks_statistic(f, [](double x) { return reg_inc_beta(std::clamp(x, 0.0, 1.0), 2, 3); });
  const double secs = seconds_since(start);
  return {ks < 0.02 && secs <= 120, fmt("KS vs Beta(2,3) = %.4f (< 0.02), %.1f s (<= 120 s)", ks, secs)};
}

Outcome equalization() {
  const auto start = Clock::now();
  struct Case {
    double p;
    std::uint64_t b;
    std::uint64_t w;
  };
  bool pass = true;
  std::string detail;
  for (const Case c : {Case{1.0, 2, 1}, Case{0.75, 2, 1}, Case{0.75, 5, 1}}) {
    const Params params = derive_params(c.p);
    const double analytic = equalization_prob(c.b, c.w, params);
    const Estimate est = mc_equalization(params, c.b, c.w, 10'000, 100'000, kSeed, workers());
    const bool ok = est.covers(analytic);
    pass = pass && ok;
    detail += fmt("(%.2g,%llu,%llu) %.4f in [%.4f, %.4f]%s; ", c.p, (unsigned long long)c.b,
                  (unsigned long long)c.w, analytic, est.ci_low, est.ci_high, ok ? "" : " MISS");
    if (c.b == 5) {
      const double bound = equalization_bound(c.b, params);
      const bool below = est.point <= bound;
      pass = pass && below;
      detail += fmt("estimate %.4f <= bound %.5f; ", est.point, bound);
    }
  }
  const double secs = seconds_since(start);
  pass = pass && secs <= 180;
  return {pass, detail + fmt("%.1f s (<= 180 s)", secs)};
}

Outcome mixture_atoms() {
  const Params params = derive_params(0.75);
  const LimitMixture mix(2, 3, params);
  const auto runs = two_colour_batch(params, 2, 3, 10'000, 100'000);
  std::uint64_t at_zero = 0;
  std::uint64_t at_one = 0;
  std::vector<double> interior;
  for (const auto& r : runs) {
    if (r.absorbed == Absorption::AtZero) ++at_zero;
    else if (r.absorbed == Absorption::AtOne) ++at_one;
    else interior.push_back(r.final_fraction);
  }
  const Estimate zero = proportion_estimate(at_zero, runs.size());
  const Estimate one = proportion_estimate(at_one, runs.size());
  const double ks = ks_statistic(interior, [&](double x) { return mix.continuous_cdf(std::clamp(x, 0.0, 1.0)); });
  const bool pass = zero.covers(mix.weights().atom_zero) && one.covers(mix.weights().atom_one) && ks < 0.03;
  return {pass, fmt("r_23 %.4f in [%.4f, %.4f]; r_32 %.4f in [%.4f, %.4f]; interior KS = %.4f (< 0.03)",
                    mix.weights().atom_zero, zero.ci_low, zero.ci_high, mix.weights().atom_one, one.ci_low,
                    one.ci_high, ks)};
}

Outcome single_colour_limit() {
  const Params params = derive_params(0.75);
  const auto draws = run_trials(100'000, workers(), [&](std::uint64_t i) {
    RngStream rng(kSeed, i);
    return normalized_limit_sample(params, kDefaultLimitTime, rng);
  });
  std::vector<double> survivors;
  for (double x : draws) {
    if (x > 0.0) survivors.push_back(x);
  }
  const std::uint64_t zeros = draws.size() - survivors.size();
  const Estimate zero = proportion_estimate(zeros, draws.size());
  const double rate = 1.0 / params.beta();
  const double ks = ks_statistic(survivors, [&](double x) { return x <= 0 ? 0.0 : -std::expm1(-rate * x); });
  const double threshold = ks_threshold(survivors.size());
  const double m = mean(draws);
  const bool pass = zero.covers(params.gamma()) && ks < threshold && std::fabs(m - 1.0) <= 0.02;
  return {pass, fmt("zero fraction 1/3 in [%.4f, %.4f]; survivor KS = %.4f (< %.4f); mean = %.4f (1 +- 0.02)",
                    zero.ci_low, zero.ci_high, ks, threshold, m)};
}

Outcome variance() {
  bool pass = true;
  std::string detail;
  for (auto [p, t] : {std::pair{0.75, 1.0}, std::pair{0.6, 2.0}}) {
    const Params params = derive_params(p);
    const auto xs = run_trials(100'000, workers(), [&](std::uint64_t i) {
      RngStream rng(kSeed, i);
      return static_cast<double>(birth_death_population_at(params, t, rng));
    });
    const auto [var, se] = variance_with_se(xs);
    const double formula = variance_formula(params, t);
    const double z = (var - formula) / se;
    pass = pass && std::fabs(z) <= 5.0;
    detail += fmt("(%.2g,%.0f) sample %.4f vs %.5f, %.2f SE; ", p, t, var, formula, z);
  }
  return {pass, detail + "(|z| <= 5)"};
}

std::string gate_summary(const Verification& v) {
  std::string s;
  for (const Gate& g : v.gates) {
    s += fmt("%s %.4f in [%.4f, %.4f]%s; ", g.name.c_str(), g.value, g.low, g.high, g.pass ? "" : " FAIL");
  }
  if (!s.empty()) s.resize(s.size() - 2);
  return s;
}

Outcome fixed_point() {
  const Verification v = verify_fixed_point(derive_params(0.75), 100'000, kSeed, workers());
  return {v.pass(), gate_summary(v)};
}

Outcome growth_exponent_check() {
  const auto start = Clock::now();
  const Verification v = verify_exponent(derive_params(0.75), 1'000'000, 50, 10'000, kSeed, workers());
  const double secs = seconds_since(start);

  const auto polya = run_trials(10, workers(), [&](std::uint64_t i) {
    RngStream rng(kSeed, i);
    return run_trajectory(Params::simulation(1.0), 100'000, rng);
  });
  const double control = growth_exponent(polya, 10'000).slope;
  const bool control_ok = std::fabs(control - 1.0) < 1e-12;
  return {v.pass() && secs <= 600 && control_ok,
          gate_summary(v) + fmt("; se %.5f; %.1f s (<= 600 s); p=1 control slope %.15f",
                                v.results["std_error"].get<double>(), secs, control)};
}

Outcome dominance() {
  const Verification v = verify_dominance(derive_params(0.75), 100'000, 100, kSeed, workers());
  const auto& counts = v.results["change_counts"];
  std::uint64_t most = 0;
  for (const auto& c : counts) most = std::max(most, c.get<std::uint64_t>());
  return {v.pass(), gate_summary(v) + fmt("; median last change %.1f; max changes per run %llu",
                                          v.results["median_last_change"].get<double>(),
                                          (unsigned long long)most)};
}

std::string cli_output(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  urn::cli::run(args, out, err);
  return out.str();
}

Outcome structural() {
  // Weight-sum identity.
  const std::vector<double> grid{0.51, 0.55, 0.6, 2.0 / 3.0, 0.75, 0.8, 0.9, 0.99, 1.0};
  double worst_sum = 0.0;
  for (double p : grid) {
    for (std::uint64_t b = 1; b <= 50; ++b) {
      for (std::uint64_t w = 1; w <= 50; ++w) {
        const MixtureWeights m = mixture_weights(b, w, derive_params(p));
        worst_sum = std::max(worst_sum, std::fabs(m.atom_zero + m.continuous + m.atom_one - 1.0));
      }
    }
  }

  // CDF monotonicity and the reflection identity F_{b,w}(x) + F_{w,b}(1 - x) = 1.
  double worst_drop = 0.0;
  double worst_sym = 0.0;
  for (double p : grid) {
    for (auto [b, w] : {std::pair{1u, 1u}, std::pair{2u, 3u}, std::pair{5u, 1u}, std::pair{10u, 7u}}) {
      const LimitMixture mix(b, w, derive_params(p));
      const LimitMixture swapped(w, b, derive_params(p));
      double prev = mix.cdf(0.0);
      for (int i = 1; i <= 1000; ++i) {
        const double x = i / 1000.0;
        const double v = mix.cdf(x);
        worst_drop = std::max(worst_drop, prev - v);
        prev = v;
        if (i < 1000) worst_sym = std::max(worst_sym, std::fabs(v + swapped.cdf(1.0 - x) - 1.0));
      }
    }
  }

  // N_n - 1 ~ Binomial(n, p).
  const double p = 0.75;
  constexpr std::uint64_t kSteps = 100'000;
  const std::vector<std::uint64_t> schedule{kSteps};
  const auto totals = run_trials(200, workers(), [&](std::uint64_t i) {
    RngStream rng(kSeed, i);
    return static_cast<double>(run_trajectory(derive_params(p), kSteps, rng, schedule).records[0].total - 1);
  });
  const double np = kSteps * p;
  const double npq = kSteps * p * (1 - p);
  const double mean_z = (mean(totals) - np) / std::sqrt(npq / totals.size());
  const auto [var, var_se] = variance_with_se(totals);
  const double var_z = (var - npq) / var_se;

  // Byte-identical reruns at any worker count.
  const std::vector<std::vector<std::string>> commands{
      {"two-colour", "--p", "0.75", "--b", "3", "--w", "2", "--steps", "20000", "--trials", "200", "--seed", "7"},
      {"verify", "dominance", "--p", "0.75", "--steps", "20000", "--trials", "20", "--seed", "7"},
  };
  bool identical = true;
  for (const auto& base : commands) {
    std::string reference;
    for (const char* n : {"1", "2", "4", "1"}) {
      auto args = base;
      args.insert(args.end(), {"--workers", n});
      const std::string out = cli_output(args);
      if (reference.empty()) reference = out;
      identical = identical && !out.empty() && out == reference;
    }
  }

  const bool pass = worst_sum <= 1e-12 && worst_drop <= 1e-10 && worst_sym <= 1e-10 && std::fabs(mean_z) <= 4 &&
                    std::fabs(var_z) <= 4 && identical;
  return {pass, fmt("weight sum err %.1e (<= 1e-12); cdf drop %.1e, symmetry err %.1e (<= 1e-10); "
                    "N-1 mean %.2f SE, var %.2f SE (<= 4); byte-identical across workers: %s",
                    worst_sum, worst_drop, worst_sym, mean_z, var_z, identical ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"classical reduction at p = 1", classical_reduction},
      {"equalization probability", equalization},
      {"two-colour mixture atoms", mixture_atoms},
      {"single-colour limit law", single_colour_limit},
      {"birth-death variance", variance},
      {"fixed point of T", fixed_point},
      {"growth exponent", growth_exponent_check},
      {"leader dominance", dominance},
      {"structural suite", structural},
  };
  std::printf("seed %llu, %u worker(s)\n", (unsigned long long)kSeed, workers());
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
