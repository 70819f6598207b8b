#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "urn/birth_death.hpp"
#include "urn/discrete_urn.hpp"
#include "urn/params.hpp"
#include "urn/two_colour.hpp"

namespace urn {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

std::string_view to_string(Absorption absorbed) noexcept;

/// CSV with header n,N,M,leader_id,num_colours.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
/// {seed, p, steps, leadership_changes: [...]}
nlohmann::json trajectory_summary(const Trajectory& trajectory, std::uint64_t seed, double p);

/// CSV with header time,population; the first row is the initial state 0,1.
void write_path_csv(std::ostream& out, const BirthDeathPath& path);
/// {extinct, final_population, events, final_time}
nlohmann::json path_summary(const BirthDeathPath& path);

/// CSV with header n,B,W,f.
void write_two_colour_path_csv(std::ostream& out, std::span<const TwoColourState> states);

struct TwoColourRow {
  std::uint64_t trial;
  std::uint64_t seed;
  std::uint64_t b;
  std::uint64_t w;
  double p;
  TwoColourOutcome outcome;
};

/// CSV with header trial,seed,b,w,p,final_f,absorbed,eq_count,first_eq,steps.
/// absorbed is one of none/zero/one; first_eq is empty when no equalization.
void write_two_colour_batch_csv(std::ostream& out, std::span<const TwoColourRow> rows);

/// {b, w, p, r0, rstar, r1, F_half, P_eq, bound}. P_eq is null unless b > w;
/// bound is 2 (2p)^{-b}.
nlohmann::json analytic_summary(std::uint64_t b, std::uint64_t w, const Params& params);

/// Top-level report {command, params, seed, results, pass}; seed and pass are
/// null when not applicable.
nlohmann::json make_report(std::string_view command, nlohmann::json params,
                           std::optional<std::uint64_t> seed, nlohmann::json results,
                           std::optional<bool> pass);

}  // namespace urn
