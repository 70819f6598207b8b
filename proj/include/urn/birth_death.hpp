#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "urn/params.hpp"
#include "urn/rng.hpp"

namespace urn {

/// Hard cap on events for any single continuous-time simulation.
inline constexpr std::uint64_t kEventBudget = 100'000'000;

/// Stop after time t_max, after event_budget events, or whichever comes first.
struct Horizon {
  std::optional<double> t_max;
  std::optional<std::uint64_t> event_budget;
};

/// One linear birth-death path started from a single individual. Entry i of
/// `times` / `population` is the i-th event; the initial state (0, 1) is
/// implicit.
struct BirthDeathPath {
  Params params;
  std::vector<double> times;
  std::vector<std::uint64_t> population;
  bool extinct = false;

  std::uint64_t final_population() const noexcept {
    return population.empty() ? 1 : population.back();
  }
};

/// Next-event simulation: from x > 0 wait Exponential(x), then birth with
/// probability p, death otherwise. Requires 0 < p <= 1. Throws HorizonZero if
/// neither horizon field is set, EventBudgetExceeded if only t_max is set and
/// the path needs more than kEventBudget events.
BirthDeathPath simulate_birth_death(const Params& params, const Horizon& horizon, RngStream& rng);

/// X(t) for one path, without storing the path. Consumes the stream exactly
/// like simulate_birth_death with Horizon{t, none}.
std::uint64_t birth_death_population_at(const Params& params, double t, RngStream& rng);

/// X(t) e^{-(2p-1)t}, a finite-time draw approximating the single-colour limit.
/// Requires p > 1/2.
double normalized_limit_sample(const Params& params, double t_eval, RngStream& rng);

/// True when e^{-(2p-1)t} < 0.05, i.e. the finite-time bias of
/// normalized_limit_sample is small.
bool limit_horizon_sufficient(const Params& params, double t_eval);

/// Default t_eval for limit samples.
inline constexpr double kDefaultLimitTime = 12.0;

/// Total ball count N(t) of the embedded urn: a Yule process with per-ball
/// rate p started from one ball. Requires 0 < p <= 1.
std::uint64_t simulate_total_population(const Params& params, double t, RngStream& rng);

/// Var X(t) = e^{2(2p-1)t} (1 - e^{-(2p-1)t}) / (2p - 1) for p > 1/2.
double variance_formula(const Params& params, double t);

}  // namespace urn
