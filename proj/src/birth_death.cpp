#include "urn/birth_death.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "urn/error.hpp"

namespace urn {

namespace {

void require_positive_p(const Params& params, const char* what) {
  if (!(params.p() > 0.0)) {
    throw UrnError(ErrorKind::ParamDomain, std::string(what) + " requires 0 < p <= 1");
  }
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw UrnError(ErrorKind::Domain, "time must be finite and non-negative");
  }
}

// Shared event loop; `on_event(time, population)` sees every event.
template <class OnEvent>
std::uint64_t run_birth_death(const Params& params, double t_max, std::uint64_t budget,
                              bool budget_is_error, RngStream& rng, OnEvent&& on_event) {
  const double p = params.p();
  std::uint64_t x = 1;
  double t = 0.0;
  std::uint64_t events = 0;
  while (x > 0) {
    const double wait = rng.exponential(static_cast<double>(x));
    if (t + wait > t_max) break;
    if (events == budget) {
      if (budget_is_error) {
        throw UrnError(ErrorKind::EventBudgetExceeded,
                       "birth-death path exceeded " + std::to_string(budget) + " events");
      }
      break;
    }
    t += wait;
    x = rng.uniform() < p ? x + 1 : x - 1;
    ++events;
    on_event(t, x);
  }
  return x;
}

}  // namespace

BirthDeathPath simulate_birth_death(const Params& params, const Horizon& horizon, RngStream& rng) {
  require_positive_p(params, "simulate_birth_death");
  if (!horizon.t_max && !horizon.event_budget) {
    throw UrnError(ErrorKind::HorizonZero, "set t_max, event_budget, or both");
  }
  const double t_max = horizon.t_max.value_or(std::numeric_limits<double>::infinity());
  if (horizon.t_max) require_time(t_max);
  const std::uint64_t budget = horizon.event_budget.value_or(kEventBudget);
  const bool budget_is_error = !horizon.event_budget;

  BirthDeathPath path{params, {}, {}, false};
  const std::uint64_t final = run_birth_death(
      params, t_max, budget, budget_is_error, rng, [&](double t, std::uint64_t x) {
        path.times.push_back(t);
        path.population.push_back(x);
      });
  path.extinct = final == 0;
  return path;
}

std::uint64_t birth_death_population_at(const Params& params, double t, RngStream& rng) {
  require_positive_p(params, "birth_death_population_at");
  require_time(t);
  return run_birth_death(params, t, kEventBudget, true, rng, [](double, std::uint64_t) {});
}

double normalized_limit_sample(const Params& params, double t_eval, RngStream& rng) {
  require_supercritical(params, "normalized_limit_sample");
  const auto x = static_cast<double>(birth_death_population_at(params, t_eval, rng));
  return x * std::exp(-params.drift() * t_eval);
}

bool limit_horizon_sufficient(const Params& params, double t_eval) {
  return params.supercritical() && std::exp(-params.drift() * t_eval) < 0.05;
}

std::uint64_t simulate_total_population(const Params& params, double t, RngStream& rng) {
  require_positive_p(params, "simulate_total_population");
  require_time(t);
  const double p = params.p();
  std::uint64_t n = 1;
  double now = 0.0;
  for (std::uint64_t events = 0;; ++events) {
    now += rng.exponential(p * static_cast<double>(n));
    if (now > t) return n;
    if (events == kEventBudget) {
      throw UrnError(ErrorKind::EventBudgetExceeded,
                     "Yule process exceeded " + std::to_string(kEventBudget) + " events");
    }
    ++n;
  }
}

double variance_formula(const Params& params, double t) {
  require_supercritical(params, "variance_formula");
  require_time(t);
  const double r = params.drift();
  return std::exp(2.0 * r * t) * -std::expm1(-r * t) / r;
}

}  // namespace urn
