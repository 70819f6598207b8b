#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "urn/analytic.hpp"
#include "urn/birth_death.hpp"
#include "urn/discrete_urn.hpp"
#include "urn/error.hpp"
#include "urn/io.hpp"
#include "urn/parallel.hpp"
#include "urn/two_colour.hpp"
#include "urn/verify.hpp"

namespace urn::cli {

namespace {

using nlohmann::json;

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  double p = 0.75;
  std::uint64_t b = 2;
  std::uint64_t w = 1;
  std::vector<std::uint64_t> counts;
  std::uint64_t steps = 0;
  std::uint64_t trials = 1;
  std::uint64_t samples = 100'000;
  std::uint64_t n_min = 10'000;
  std::optional<double> t_max;
  std::optional<std::uint64_t> events;
  std::uint64_t seed = 0;
  std::string out_path;
  std::optional<Format> format;
  unsigned workers = 1;
  std::string config_path;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, Format> kFormats{{"csv", Format::Csv}, {"json", Format::Json}};

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

/// Replaces `--config PATH` with the flags listed in PATH, one `key = value`
/// per line ('#' starts a comment). Flags given explicitly take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 == args.size()) throw UsageError("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      kept.push_back(args[i]);
    }
  }
  if (!path) return kept;
  std::ifstream in(*path);
  if (!in) throw UsageError("--config: cannot read " + *path);
  std::vector<std::string> extra;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("--config: expected key = value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) != 0) key = "--" + key;
    if (key == "--config") throw UsageError("--config files cannot nest");
    if (has_flag(kept, key)) continue;
    extra.push_back(key);
    extra.push_back(value);
  }
  kept.insert(kept.end(), extra.begin(), extra.end());
  return kept;
}

void add_common(CLI::App& cmd, RunConfig& cfg, bool randomized) {
  // Consumed by expand_config before parsing; declared here for --help.
  cmd.add_option("--config", cfg.config_path, "Flat key = value file mirroring the flags");
  cmd.add_option("--out", cfg.out_path, "Output path (default: stdout)");
  cmd.add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  if (randomized) {
    cmd.add_option("--seed", cfg.seed, "64-bit seed; every randomized run needs one")->required();
    cmd.add_option("--workers", cfg.workers, "Worker threads (0 = hardware threads)")
        ->check(CLI::Range(0u, 1024u));
  }
}

CLI::Option* add_p(CLI::App& cmd, RunConfig& cfg) {
  return cmd.add_option("--p", cfg.p, "Duplication probability p in [0, 1]")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
}

void add_bw(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--b", cfg.b, "Initial black balls (>= 1)")->required()->check(CLI::PositiveNumber);
  cmd.add_option("--w", cfg.w, "Initial white balls (>= 1)")->required()->check(CLI::PositiveNumber);
}

void require_supercritical_flag(const RunConfig& cfg) {
  if (!(cfg.p > 0.5)) {
    throw UsageError("--p: this command needs 1/2 < p <= 1, got " + format_double(cfg.p));
  }
}

json params_json(const RunConfig& cfg) {
  json j{{"p", cfg.p}};
  if (cfg.command == "two-colour" || cfg.command == "analytic" ||
      cfg.command == "verify equalization") {
    j["b"] = cfg.b;
    j["w"] = cfg.w;
  }
  if (cfg.command == "k-colour") j["counts"] = cfg.counts;
  if (cfg.steps > 0) j["steps"] = cfg.steps;
  if (cfg.command != "analytic" && cfg.command != "simulate-urn") j["trials"] = cfg.trials;
  if (cfg.command == "verify fixed-point") j["samples"] = cfg.samples;
  if (cfg.command == "verify exponent") j["n_min"] = cfg.n_min;
  if (cfg.t_max) j["t_max"] = *cfg.t_max;
  if (cfg.events) j["events"] = *cfg.events;
  return j;
}

// Either the --out file or the provided stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("--out: cannot open " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int emit_json(const RunConfig& cfg, std::ostream& out, json results, std::optional<bool> pass,
              bool seeded) {
  Sink sink(cfg.out_path, out);
  sink.get() << make_report(cfg.command, params_json(cfg),
                            seeded ? std::optional<std::uint64_t>(cfg.seed) : std::nullopt,
                            std::move(results), pass)
                    .dump(2)
             << '\n';
  return kExitOk;
}

int cmd_simulate_urn(const RunConfig& cfg, std::ostream& out) {
  const Params params = Params::simulation(cfg.p);
  RngStream rng(cfg.seed, 0);
  const Trajectory traj = run_trajectory(params, cfg.steps, rng);
  if (cfg.format.value_or(Format::Csv) == Format::Json) {
    return emit_json(cfg, out, trajectory_summary(traj, cfg.seed, cfg.p), std::nullopt, true);
  }
  Sink sink(cfg.out_path, out);
  write_trajectory_csv(sink.get(), traj);
  return kExitOk;
}

int cmd_two_colour(const RunConfig& cfg, std::ostream& out) {
  const Params params = Params::simulation(cfg.p);
  const Format format = cfg.format.value_or(Format::Csv);
  if (cfg.trials == 1 && format == Format::Csv) {
    RngStream rng(cfg.seed, 0);
    std::vector<TwoColourState> path;
    run_two_colour(params, cfg.b, cfg.w, cfg.steps, rng, &path);
    Sink sink(cfg.out_path, out);
    write_two_colour_path_csv(sink.get(), path);
    return kExitOk;
  }
  const auto rows = run_trials(cfg.trials, cfg.workers, [&](std::uint64_t i) {
    RngStream rng(cfg.seed, i);
    return TwoColourRow{i, cfg.seed, cfg.b, cfg.w, cfg.p,
                        run_two_colour(params, cfg.b, cfg.w, cfg.steps, rng)};
  });
  if (format == Format::Csv) {
    Sink sink(cfg.out_path, out);
    write_two_colour_batch_csv(sink.get(), rows);
    return kExitOk;
  }
  json outcomes = json::array();
  for (const TwoColourRow& r : rows) {
    outcomes.push_back({{"trial", r.trial},
                        {"final_f", r.outcome.final_fraction},
                        {"absorbed", to_string(r.outcome.absorbed)},
                        {"eq_count", r.outcome.equalization_count},
                        {"first_eq", r.outcome.first_equalization
                                         ? json(*r.outcome.first_equalization)
                                         : json(nullptr)},
                        {"steps", r.outcome.steps}});
  }
  return emit_json(cfg, out, {{"outcomes", outcomes}}, std::nullopt, true);
}

int cmd_k_colour(const RunConfig& cfg, std::ostream& out) {
  const Params params = Params::simulation(cfg.p);
  if (cfg.counts.size() < 2) throw UsageError("--counts: need at least two colours");
  const auto outcomes = run_trials(cfg.trials, cfg.workers, [&](std::uint64_t i) {
    RngStream rng(cfg.seed, i);
    return run_k_colour(params, cfg.counts, cfg.steps, rng);
  });
  if (cfg.format.value_or(Format::Csv) == Format::Json) {
    json rows = json::array();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      rows.push_back({{"trial", i},
                      {"fractions", outcomes[i].fractions},
                      {"all_extinct", outcomes[i].all_extinct},
                      {"steps", outcomes[i].steps}});
    }
    return emit_json(cfg, out, {{"outcomes", rows}}, std::nullopt, true);
  }
  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.get();
  os << "trial,seed,p,steps,all_extinct";
  for (std::size_t c = 0; c < cfg.counts.size(); ++c) os << ",f" << c;
  os << '\n';
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    os << i << ',' << cfg.seed << ',' << format_double(cfg.p) << ',' << outcomes[i].steps << ','
       << (outcomes[i].all_extinct ? 1 : 0);
    for (double f : outcomes[i].fractions) os << ',' << format_double(f);
    os << '\n';
  }
  return kExitOk;
}

int cmd_birth_death(const RunConfig& cfg, std::ostream& out) {
  const Params params = Params::simulation(cfg.p);
  if (!(cfg.p > 0.0)) throw UsageError("--p: birth-death needs 0 < p <= 1");
  if (!cfg.t_max && !cfg.events) throw UsageError("--t-max/--events: set at least one horizon");
  const Horizon horizon{cfg.t_max, cfg.events};
  const Format format = cfg.format.value_or(Format::Csv);
  if (cfg.trials == 1) {
    RngStream rng(cfg.seed, 0);
    const BirthDeathPath path = simulate_birth_death(params, horizon, rng);
    if (format == Format::Json) return emit_json(cfg, out, path_summary(path), std::nullopt, true);
    Sink sink(cfg.out_path, out);
    write_path_csv(sink.get(), path);
    return kExitOk;
  }
  const auto summaries = run_trials(cfg.trials, cfg.workers, [&](std::uint64_t i) {
    RngStream rng(cfg.seed, i);
    return path_summary(simulate_birth_death(params, horizon, rng));
  });
  if (format == Format::Json) return emit_json(cfg, out, {{"paths", summaries}}, std::nullopt, true);
  Sink sink(cfg.out_path, out);
  sink.get() << "trial,extinct,final_population,events,final_time\n";
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const json& s = summaries[i];
    sink.get() << i << ',' << (s["extinct"].get<bool>() ? 1 : 0) << ','
               << s["final_population"].get<std::uint64_t>() << ','
               << s["events"].get<std::uint64_t>() << ','
               << format_double(s["final_time"].get<double>()) << '\n';
  }
  return kExitOk;
}

int cmd_analytic(const RunConfig& cfg, std::ostream& out) {
  require_supercritical_flag(cfg);
  const json summary = analytic_summary(cfg.b, cfg.w, Params::derived(cfg.p));
  if (cfg.format.value_or(Format::Json) == Format::Csv) {
    Sink sink(cfg.out_path, out);
    sink.get() << "b,w,p,r0,rstar,r1,F_half,P_eq,bound\n"
               << cfg.b << ',' << cfg.w << ',' << format_double(cfg.p) << ','
               << format_double(summary["r0"].get<double>()) << ','
               << format_double(summary["rstar"].get<double>()) << ','
               << format_double(summary["r1"].get<double>()) << ','
               << format_double(summary["F_half"].get<double>()) << ',';
    if (!summary["P_eq"].is_null()) sink.get() << format_double(summary["P_eq"].get<double>());
    sink.get() << ',' << format_double(summary["bound"].get<double>()) << '\n';
    return kExitOk;
  }
  return emit_json(cfg, out, summary, std::nullopt, false);
}

int finish_verification(const RunConfig& cfg, std::ostream& out, const Verification& v) {
  const bool pass = v.pass();
  if (cfg.format.value_or(Format::Json) == Format::Csv) {
    Sink sink(cfg.out_path, out);
    sink.get() << "gate,value,low,high,pass\n";
    for (const Gate& g : v.gates) {
      sink.get() << g.name << ',' << format_double(g.value) << ',' << format_double(g.low) << ','
                 << format_double(g.high) << ',' << (g.pass ? 1 : 0) << '\n';
    }
  } else {
    json results = v.results;
    json gates = json::array();
    for (const Gate& g : v.gates) gates.push_back(to_json(g));
    results["gates"] = gates;
    emit_json(cfg, out, results, pass, true);
  }
  return pass ? kExitOk : kExitGateFailed;
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  const std::string& c = cfg.command;
  if (c == "simulate-urn") return cmd_simulate_urn(cfg, out);
  if (c == "two-colour") return cmd_two_colour(cfg, out);
  if (c == "k-colour") return cmd_k_colour(cfg, out);
  if (c == "birth-death") return cmd_birth_death(cfg, out);
  if (c == "analytic") return cmd_analytic(cfg, out);
  require_supercritical_flag(cfg);
  const Params params = Params::derived(cfg.p);
  if (c == "verify fixed-point") {
    return finish_verification(cfg, out,
                               verify_fixed_point(params, cfg.samples, cfg.seed, cfg.workers));
  }
  if (c == "verify equalization") {
    if (cfg.b <= cfg.w) throw UsageError("--b/--w: equalization needs b > w");
    return finish_verification(
        cfg, out,
        verify_equalization(params, cfg.b, cfg.w, cfg.trials, cfg.steps, cfg.seed, cfg.workers));
  }
  if (c == "verify exponent") {
    return finish_verification(
        cfg, out,
        verify_exponent(params, cfg.steps, cfg.trials, cfg.n_min, cfg.seed, cfg.workers));
  }
  if (c == "verify dominance") {
    return finish_verification(
        cfg, out, verify_dominance(params, cfg.steps, cfg.trials, cfg.seed, cfg.workers));
  }
  throw UsageError("unknown command " + c);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Simulation and limit-law toolkit for the recolouring urn", "urnsim"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate-urn", "Infinite-colour urn trajectory");
  add_p(*sim, cfg);
  sim->add_option("--steps", cfg.steps, "Urn steps (>= 1)")->required()->check(CLI::PositiveNumber);
  add_common(*sim, cfg, true);

  auto* two = app.add_subcommand("two-colour", "Two-colour projected urn");
  add_p(*two, cfg);
  add_bw(*two, cfg);
  two->add_option("--steps", cfg.steps, "Maximum steps per trial")->required();
  two->add_option("--trials", cfg.trials, "Trials (>= 1)")->check(CLI::PositiveNumber);
  add_common(*two, cfg, true);

  auto* kc = app.add_subcommand("k-colour", "k-colour projected urn");
  add_p(*kc, cfg);
  kc->add_option("--counts", cfg.counts, "Initial counts, e.g. 1,1,1 (each >= 1)")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  kc->add_option("--steps", cfg.steps, "Maximum steps per trial")->required();
  kc->add_option("--trials", cfg.trials, "Trials (>= 1)")->check(CLI::PositiveNumber);
  add_common(*kc, cfg, true);

  auto* bd = app.add_subcommand("birth-death", "Linear birth-death path");
  add_p(*bd, cfg);
  bd->add_option("--t-max", cfg.t_max, "Time horizon (>= 0)")->check(CLI::NonNegativeNumber);
  bd->add_option("--events", cfg.events, "Event budget (>= 1)")->check(CLI::PositiveNumber);
  bd->add_option("--trials", cfg.trials, "Trials (>= 1)")->check(CLI::PositiveNumber);
  add_common(*bd, cfg, true);

  auto* an = app.add_subcommand("analytic", "Closed-form limit-law values");
  add_p(*an, cfg);
  add_bw(*an, cfg);
  add_common(*an, cfg, false);

  auto* verify = app.add_subcommand("verify", "Monte Carlo verification gates");
  verify->require_subcommand(1);
  auto* vfp = verify->add_subcommand("fixed-point", "Fixed point of the distributional map");
  add_p(*vfp, cfg);
  vfp->add_option("--samples", cfg.samples, "Draws per sample (>= 2)")->check(CLI::Range(2ull, 1ull << 40));
  add_common(*vfp, cfg, true);

  auto* veq = verify->add_subcommand("equalization", "Equalization probability");
  add_p(*veq, cfg);
  add_bw(*veq, cfg);
  veq->add_option("--trials", cfg.trials, "Trials (>= 1)")->check(CLI::PositiveNumber);
  veq->add_option("--steps", cfg.steps, "Maximum steps per trial");
  add_common(*veq, cfg, true);

  auto* vex = verify->add_subcommand("exponent", "Growth exponent of the leading colour");
  add_p(*vex, cfg);
  vex->add_option("--steps", cfg.steps, "Urn steps per trajectory")->check(CLI::PositiveNumber);
  vex->add_option("--trials", cfg.trials, "Trajectories (>= 10)")->check(CLI::Range(10ull, 1ull << 32));
  vex->add_option("--n-min", cfg.n_min, "Smallest step index used in the fit");
  add_common(*vex, cfg, true);

  auto* vdo = verify->add_subcommand("dominance", "Leadership stability");
  add_p(*vdo, cfg);
  vdo->add_option("--steps", cfg.steps, "Urn steps per trajectory")->check(CLI::PositiveNumber);
  vdo->add_option("--trials", cfg.trials, "Trajectories (>= 10)")->check(CLI::Range(10ull, 1ull << 32));
  add_common(*vdo, cfg, true);

  // Defaults for the verification pipelines, overridable by flags.
  veq->preparse_callback([&](std::size_t) { cfg.trials = 10'000; cfg.steps = 100'000; });
  vex->preparse_callback([&](std::size_t) { cfg.trials = 50; cfg.steps = 1'000'000; });
  vdo->preparse_callback([&](std::size_t) { cfg.trials = 100; cfg.steps = 100'000; });

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    for (auto* leaf : sub->get_subcommands()) cfg.command += " " + leaf->get_name();
  }

  try {
    return dispatch(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UrnError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace urn::cli
