#include "urn/discrete_urn.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "urn/error.hpp"

namespace urn {

UrnState::UrnState() : balls_{0}, counts_{1}, histogram_{0, 1}, live_{0}, position_{0} {}

Event UrnState::step(const Params& params, RngStream& rng) {
  const std::size_t ball = rng.below(balls_.size());
  const EventKind kind = rng.uniform() < params.p() ? EventKind::Duplication : EventKind::Recolour;
  return apply(kind, ball);
}

Event UrnState::apply(EventKind kind, std::size_t ball_index) {
  if (ball_index >= balls_.size()) {
    throw UrnError(ErrorKind::Domain, "ball index out of range");
  }
  const std::uint32_t drawn = balls_[ball_index];
  const ColourId previous_leader = leader_.colour;
  Event event{kind, drawn, drawn, false, false};
  if (kind == EventKind::Duplication) {
    balls_.push_back(drawn);
    increment(drawn);
  } else {
    if (counts_.size() >= std::numeric_limits<std::uint32_t>::max()) {
      throw std::length_error("urn exhausted 32-bit colour ids");
    }
    // Birth first, so the urn never momentarily has no colour at the maximum.
    const auto fresh = static_cast<std::uint32_t>(counts_.size());
    counts_.push_back(0);
    position_.push_back(0);
    increment(fresh);
    balls_[ball_index] = fresh;
    decrement(drawn);
    event.created = fresh;
    event.extinction = counts_[drawn] == 0;
  }
  ++step_index_;
  event.leader_changed = leader_.colour != previous_leader;
  assert(counts_[leader_.colour] == leader_.count);
  assert(leader_.count < histogram_.size() && histogram_[leader_.count] > 0);
  return event;
}

void UrnState::increment(std::uint32_t colour) {
  const std::uint64_t level = ++counts_[colour];
  if (level == 1) {
    position_[colour] = static_cast<std::uint32_t>(live_.size());
    live_.push_back(colour);
  } else {
    --histogram_[level - 1];
  }
  if (histogram_.size() <= level) histogram_.resize(level + 1, 0);
  ++histogram_[level];
  if (level > leader_.count || (level == leader_.count && colour < leader_.colour)) {
    leader_ = {colour, level};
  }
}

void UrnState::decrement(std::uint32_t colour) {
  const std::uint64_t old_level = counts_[colour]--;
  const std::uint64_t level = old_level - 1;
  --histogram_[old_level];
  if (level > 0) {
    ++histogram_[level];
  } else {
    const std::uint32_t moved = live_.back();
    live_[position_[colour]] = moved;
    position_[moved] = position_[colour];
    live_.pop_back();
  }
  if (colour != leader_.colour) return;
  if (histogram_[old_level] > 0) {
    leader_ = {smallest_at(old_level), old_level};
    return;
  }
  // The unique maximum dropped by one; it stays the leader unless tied.
  assert(level > 0 && histogram_[level] > 0);
  leader_.count = level;
  if (histogram_[level] > 1) leader_.colour = smallest_at(level);
}

ColourId UrnState::smallest_at(std::uint64_t level) const {
  ColourId best = std::numeric_limits<ColourId>::max();
  for (std::uint32_t id : live_) {
    if (counts_[id] == level && id < best) best = id;
  }
  return best;
}

std::map<ColourId, std::uint64_t> UrnState::counts() const {
  std::map<ColourId, std::uint64_t> out;
  for (ColourId id = 0; id < counts_.size(); ++id) {
    if (counts_[id] > 0) out.emplace(id, counts_[id]);
  }
  return out;
}

bool UrnState::check_counts() const {
  std::vector<std::uint64_t> hist(histogram_.size(), 0);
  std::uint64_t sum = 0;
  std::uint64_t live = 0;
  Leader best{0, 0};
  for (std::size_t i = 0; i < live_.size(); ++i) {
    if (live_[i] >= counts_.size() || counts_[live_[i]] == 0 || position_[live_[i]] != i) {
      return false;
    }
  }
  for (ColourId id = 0; id < counts_.size(); ++id) {
    const std::uint64_t c = counts_[id];
    if (c == 0) continue;
    if (c >= hist.size()) return false;
    ++hist[c];
    sum += c;
    ++live;
    if (c > best.count) best = {id, c};
  }
  std::uint64_t weighted = 0;
  std::uint64_t colours = 0;
  for (std::size_t j = 1; j < histogram_.size(); ++j) {
    weighted += j * histogram_[j];
    colours += histogram_[j];
  }
  return sum == balls_.size() && live == live_.size() && hist == histogram_ &&
         weighted == sum && colours == live && best == leader_;
}

bool UrnState::check_invariants() const {
  std::vector<std::uint32_t> recount(counts_.size(), 0);
  for (std::uint32_t c : balls_) {
    if (c >= recount.size()) return false;
    ++recount[c];
  }
  return recount == counts_ && check_counts() &&
         balls_.size() == 1 + (step_index_ - (counts_.size() - 1));
}

std::vector<std::uint64_t> default_record_schedule(std::uint64_t steps) {
  std::vector<std::uint64_t> schedule;
  double power = 1.0;
  while (true) {
    const auto n = static_cast<std::uint64_t>(std::ceil(power));
    if (n > steps) break;
    if (schedule.empty() || schedule.back() != n) schedule.push_back(n);
    power *= 1.1;
  }
  if (schedule.empty() || schedule.back() != steps) schedule.push_back(steps);
  return schedule;
}

Trajectory run_trajectory(const Params& params, std::uint64_t steps, RngStream& rng,
                          std::span<const std::uint64_t> record_schedule) {
  if (steps == 0) throw UrnError(ErrorKind::Domain, "run_trajectory needs steps >= 1");
  std::vector<std::uint64_t> fallback;
  if (record_schedule.empty()) {
    fallback = default_record_schedule(steps);
    record_schedule = fallback;
  }
  for (std::size_t i = 0; i < record_schedule.size(); ++i) {
    if ((i > 0 && record_schedule[i] <= record_schedule[i - 1]) || record_schedule[i] > steps) {
      throw UrnError(ErrorKind::Domain,
                     "record schedule must be strictly increasing and within [0, steps]");
    }
  }

  UrnState state;
  Trajectory traj;
  traj.steps = steps;
  traj.records.reserve(record_schedule.size());
  std::size_t next = 0;
  auto record = [&] {
    if (!state.check_counts()) {
      throw std::logic_error("urn invariants violated at step " +
                             std::to_string(state.step_index()));
    }
    const Leader lead = state.leader();
    traj.records.push_back(
        {state.step_index(), state.total(), lead.count, lead.colour, state.live_colours()});
    ++next;
  };
  if (next < record_schedule.size() && record_schedule[next] == 0) record();
  for (std::uint64_t n = 1; n <= steps; ++n) {
    const Event event = state.step(params, rng);
    if (event.kind == EventKind::Duplication) ++traj.duplications;
    if (event.leader_changed) traj.leadership_changes.push_back(n);
    if (next < record_schedule.size() && record_schedule[next] == n) record();
  }
  return traj;
}

}  // namespace urn
