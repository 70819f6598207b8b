#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "urn/params.hpp"
#include "urn/rng.hpp"

namespace urn {

enum class Absorption { None, AtZero, AtOne };

/// Black/white counts of the two-colour projected urn. AtZero means no black
/// balls remain (fraction 0), AtOne means no white balls remain.
struct TwoColourState {
  std::uint64_t black = 0;
  std::uint64_t white = 0;
  std::uint64_t n = 0;
  Absorption absorbed = Absorption::None;

  double fraction() const noexcept {
    return static_cast<double>(black) / static_cast<double>(black + white);
  }
  bool operator==(const TwoColourState&) const = default;
};

/// Initial state (b, w); Domain error unless b + w >= 1. A zero count starts
/// absorbed.
TwoColourState make_two_colour(std::uint64_t b, std::uint64_t w);

struct MoveProbabilities {
  double black_up;
  double white_up;
  double black_down;
  double white_down;
};

MoveProbabilities move_probabilities(const TwoColourState& state, const Params& params);

/// One transition. Throws Absorbed on a frozen state.
TwoColourState step_two_colour(const TwoColourState& state, const Params& params, RngStream& rng);

struct TwoColourOutcome {
  double final_fraction = 0.0;
  Absorption absorbed = Absorption::None;
  std::optional<std::uint64_t> absorption_time;
  /// Number of n >= 1 with B_n = W_n.
  std::uint64_t equalization_count = 0;
  /// 0 when started on the diagonal, else the first n >= 1 with B_n = W_n.
  std::optional<std::uint64_t> first_equalization;
  std::optional<std::uint64_t> last_equalization;
  std::uint64_t steps = 0;

  bool unabsorbed() const noexcept { return absorbed == Absorption::None; }
};

/// Runs from (b, w) until absorption or max_steps. If `path` is non-null every
/// visited state (including the start) is appended to it. Requires b, w >= 1.
TwoColourOutcome run_two_colour(const Params& params, std::uint64_t b, std::uint64_t w,
                                std::uint64_t max_steps, RngStream& rng,
                                std::vector<TwoColourState>* path = nullptr);

struct KColourOutcome {
  /// X_i / S at the stopping time; 0 for extinct colours, all 0 if S = 0.
  std::vector<double> fractions;
  bool all_extinct = false;
  /// Index of the sole remaining colour, if the run ended that way.
  std::optional<std::size_t> survivor;
  std::uint64_t steps = 0;
};

/// k-colour projection: draw a ball uniformly, duplicate it with probability
/// p, remove it otherwise. Stops when one colour is left, the urn is empty, or
/// after max_steps. Requires k >= 2 and all initial counts >= 1.
KColourOutcome run_k_colour(const Params& params, std::span<const std::uint64_t> initial_counts,
                            std::uint64_t max_steps, RngStream& rng);

}  // namespace urn
