#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "urn/params.hpp"
#include "urn/rng.hpp"

namespace urn {

/// Colours are numbered in order of birth and never reused.
using ColourId = std::uint64_t;

struct Leader {
  ColourId colour;
  std::uint64_t count;

  bool operator==(const Leader&) const = default;
};

enum class EventKind { Duplication, Recolour };

struct Event {
  EventKind kind;
  ColourId drawn;    // colour of the drawn ball before the event
  ColourId created;  // fresh colour on a recolour; equals `drawn` otherwise
  bool extinction;   // the drawn colour lost its last ball
  bool leader_changed;

  bool operator==(const Event&) const = default;
};

/// The infinite-colour recolouring urn.
///
/// Each step draws a ball uniformly; with probability p a ball of the same
/// colour is added, otherwise the drawn ball is recoloured with a fresh colour.
/// The leader is the colour with the most balls, ties going to the colour born
/// first. A count histogram tracks the maximum in O(1). Ties are resolved by
/// scanning the live colours, which is only needed when the leader loses a
/// ball while another colour is within one ball of it; since
/// M_n * #{colours at M_n} <= N_n the expected scan cost per step is O(1).
///
/// Storage is 32-bit per ball, so an urn supports fewer than 2^32 colours.
class UrnState {
 public:
  /// One ball of colour 0.
  UrnState();

  /// One random step of the urn.
  Event step(const Params& params, RngStream& rng);

  /// Apply a specific event to the ball at `ball_index`. step() is this with a
  /// random ball and kind; exposed so scenarios can be scripted exactly.
  Event apply(EventKind kind, std::size_t ball_index);

  Leader leader() const noexcept { return leader_; }
  std::uint64_t step_index() const noexcept { return step_index_; }
  std::uint64_t total() const noexcept { return balls_.size(); }
  std::uint64_t live_colours() const noexcept { return live_.size(); }
  ColourId next_colour_id() const noexcept { return counts_.size(); }

  /// Balls of `colour`; 0 for extinct or unborn colours.
  std::uint64_t count(ColourId colour) const noexcept {
    return colour < counts_.size() ? counts_[colour] : 0;
  }
  /// Colour of each ball, in storage order.
  std::span<const std::uint32_t> balls() const noexcept { return balls_; }
  /// Number of live colours holding exactly j balls, indexed by j.
  std::span<const std::uint64_t> count_histogram() const noexcept { return histogram_; }

  /// Live colour -> count snapshot. O(number of colours ever born).
  std::map<ColourId, std::uint64_t> counts() const;

  /// Full consistency check of counts, histogram, and leader against the
  /// ball array. O(N).
  bool check_invariants() const;
  /// Check of counts against the histogram and leader only. O(colours born).
  bool check_counts() const;

 private:
  void increment(std::uint32_t colour);
  void decrement(std::uint32_t colour);
  ColourId smallest_at(std::uint64_t level) const;

  std::vector<std::uint32_t> balls_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint64_t> histogram_;
  // Dense list of live colour ids; position_ maps id -> index in live_.
  std::vector<std::uint32_t> live_;
  std::vector<std::uint32_t> position_;
  std::uint64_t step_index_ = 0;
  Leader leader_{0, 1};
};

inline UrnState new_urn() { return UrnState{}; }

inline Leader leader(const UrnState& state) noexcept { return state.leader(); }

struct TrajectoryRecord {
  std::uint64_t n;
  std::uint64_t total;         // N_n
  std::uint64_t leader_count;  // M_n
  ColourId leader_id;
  std::uint64_t colours;

  bool operator==(const TrajectoryRecord&) const = default;
};

struct Trajectory {
  std::uint64_t steps = 0;
  std::vector<TrajectoryRecord> records;
  /// Every step index at which the leader id changed.
  std::vector<std::uint64_t> leadership_changes;
  /// Number of duplication steps.
  std::uint64_t duplications = 0;

  bool operator==(const Trajectory&) const = default;
};

/// ceil(1.1^k) for k = 0, 1, ... up to `steps`, deduplicated, with `steps`
/// itself appended.
std::vector<std::uint64_t> default_record_schedule(std::uint64_t steps);

/// Runs `steps` urn steps from a fresh urn, recording at the given step
/// indices (the default schedule when empty). Leadership changes are tracked
/// at every step. Throws Domain on steps == 0 or a schedule that is not
/// strictly increasing.
Trajectory run_trajectory(const Params& params, std::uint64_t steps, RngStream& rng,
                          std::span<const std::uint64_t> record_schedule = {});

}  // namespace urn
