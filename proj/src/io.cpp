#include "urn/io.hpp"

#include <charconv>
#include <ostream>

#include "urn/analytic.hpp"

namespace urn {

std::string format_double(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

std::string_view to_string(Absorption absorbed) noexcept {
  switch (absorbed) {
    case Absorption::None: return "none";
    case Absorption::AtZero: return "zero";
    case Absorption::AtOne: return "one";
  }
  return "none";
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "n,N,M,leader_id,num_colours\n";
  for (const TrajectoryRecord& r : trajectory.records) {
    out << r.n << ',' << r.total << ',' << r.leader_count << ',' << r.leader_id << ','
        << r.colours << '\n';
  }
}

nlohmann::json trajectory_summary(const Trajectory& trajectory, std::uint64_t seed, double p) {
  return {{"seed", seed},
          {"p", p},
          {"steps", trajectory.steps},
          {"leadership_changes", trajectory.leadership_changes}};
}

void write_path_csv(std::ostream& out, const BirthDeathPath& path) {
  out << "time,population\n0,1\n";
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    out << format_double(path.times[i]) << ',' << path.population[i] << '\n';
  }
}

nlohmann::json path_summary(const BirthDeathPath& path) {
  return {{"extinct", path.extinct},
          {"final_population", path.final_population()},
          {"events", path.times.size()},
          {"final_time", path.times.empty() ? 0.0 : path.times.back()}};
}

void write_two_colour_path_csv(std::ostream& out, std::span<const TwoColourState> states) {
  out << "n,B,W,f\n";
  for (const TwoColourState& s : states) {
    out << s.n << ',' << s.black << ',' << s.white << ',' << format_double(s.fraction()) << '\n';
  }
}

void write_two_colour_batch_csv(std::ostream& out, std::span<const TwoColourRow> rows) {
  out << "trial,seed,b,w,p,final_f,absorbed,eq_count,first_eq,steps\n";
  for (const TwoColourRow& r : rows) {
    out << r.trial << ',' << r.seed << ',' << r.b << ',' << r.w << ',' << format_double(r.p) << ','
        << format_double(r.outcome.final_fraction) << ',' << to_string(r.outcome.absorbed) << ','
        << r.outcome.equalization_count << ',';
    if (r.outcome.first_equalization) out << *r.outcome.first_equalization;
    out << ',' << r.outcome.steps << '\n';
  }
}

nlohmann::json analytic_summary(std::uint64_t b, std::uint64_t w, const Params& params) {
  const LimitMixture mixture(b, w, params);
  const MixtureWeights& r = mixture.weights();
  nlohmann::json out{{"b", b},
                     {"w", w},
                     {"p", params.p()},
                     {"r0", r.atom_zero},
                     {"rstar", r.continuous},
                     {"r1", r.atom_one},
                     {"F_half", mixture.cdf(0.5)},
                     {"P_eq", nullptr},
                     {"bound", equalization_bound(b, params)}};
  if (b > w) out["P_eq"] = equalization_prob(b, w, params);
  return out;
}

nlohmann::json make_report(std::string_view command, nlohmann::json params,
                           std::optional<std::uint64_t> seed, nlohmann::json results,
                           std::optional<bool> pass) {
  nlohmann::json report;
  report["command"] = command;
  report["params"] = std::move(params);
  report["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  report["results"] = std::move(results);
  report["pass"] = pass ? nlohmann::json(*pass) : nlohmann::json(nullptr);
  return report;
}

}  // namespace urn
