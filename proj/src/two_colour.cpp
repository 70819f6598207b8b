#include "urn/two_colour.hpp"

#include <algorithm>

#include "urn/error.hpp"

namespace urn {

TwoColourState make_two_colour(std::uint64_t b, std::uint64_t w) {
  if (b + w == 0) throw UrnError(ErrorKind::Domain, "two-colour urn needs b + w >= 1");
  TwoColourState s{b, w, 0, Absorption::None};
  if (b == 0) s.absorbed = Absorption::AtZero;
  else if (w == 0) s.absorbed = Absorption::AtOne;
  return s;
}

MoveProbabilities move_probabilities(const TwoColourState& state, const Params& params) {
  const double p = params.p();
  const double total = static_cast<double>(state.black + state.white);
  const double fb = static_cast<double>(state.black) / total;
  const double fw = static_cast<double>(state.white) / total;
  return {p * fb, p * fw, (1.0 - p) * fb, (1.0 - p) * fw};
}

namespace {

// One move driven by a single uniform: the unit interval is split into
// [pB/S, p, p + (1-p)B/S, 1) for B+1, W+1, B-1, W-1.
inline void move(std::uint64_t& black, std::uint64_t& white, double p, double u) {
  const double fb = static_cast<double>(black) / static_cast<double>(black + white);
  if (u < p) {
    if (u < p * fb) ++black;
    else ++white;
  } else {
    if (u - p < (1.0 - p) * fb) --black;
    else --white;
  }
}

inline Absorption absorption_of(std::uint64_t black, std::uint64_t white) {
  if (black == 0) return Absorption::AtZero;
  if (white == 0) return Absorption::AtOne;
  return Absorption::None;
}

}  // namespace

TwoColourState step_two_colour(const TwoColourState& state, const Params& params, RngStream& rng) {
  if (state.absorbed != Absorption::None) {
    throw UrnError(ErrorKind::Absorbed, "step_two_colour called on an absorbed state");
  }
  if (state.black + state.white == 0) throw UrnError(ErrorKind::Domain, "empty two-colour urn");
  TwoColourState next = state;
  move(next.black, next.white, params.p(), rng.uniform());
  ++next.n;
  next.absorbed = absorption_of(next.black, next.white);
  return next;
}

TwoColourOutcome run_two_colour(const Params& params, std::uint64_t b, std::uint64_t w,
                                std::uint64_t max_steps, RngStream& rng,
                                std::vector<TwoColourState>* path) {
  if (b == 0 || w == 0) throw UrnError(ErrorKind::Domain, "run_two_colour needs b, w >= 1");
  const double p = params.p();
  TwoColourOutcome out;
  if (b == w) out.first_equalization = 0;
  if (path) path->push_back(make_two_colour(b, w));

  std::uint64_t black = b;
  std::uint64_t white = w;
  std::uint64_t n = 0;
  while (n < max_steps) {
    move(black, white, p, rng.uniform());
    ++n;
    if (path) path->push_back({black, white, n, absorption_of(black, white)});
    if (black == 0 || white == 0) break;
    if (black == white) {
      ++out.equalization_count;
      if (!out.first_equalization) out.first_equalization = n;
      out.last_equalization = n;
    }
  }
  out.steps = n;
  out.absorbed = absorption_of(black, white);
  if (!out.unabsorbed()) out.absorption_time = n;
  out.final_fraction = static_cast<double>(black) / static_cast<double>(black + white);
  return out;
}

KColourOutcome run_k_colour(const Params& params, std::span<const std::uint64_t> initial_counts,
                            std::uint64_t max_steps, RngStream& rng) {
  if (initial_counts.size() < 2) throw UrnError(ErrorKind::Domain, "run_k_colour needs k >= 2");
  if (std::find(initial_counts.begin(), initial_counts.end(), 0u) != initial_counts.end()) {
    throw UrnError(ErrorKind::Domain, "run_k_colour needs all initial counts >= 1");
  }
  const double p = params.p();
  std::vector<std::uint64_t> counts(initial_counts.begin(), initial_counts.end());
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  std::size_t alive = counts.size();

  KColourOutcome out;
  std::uint64_t n = 0;
  while (n < max_steps && alive > 1) {
    const double u = rng.uniform();
    const bool duplicate = u < p;
    // Rescale the same uniform to pick a ball within the chosen branch.
    const double v = duplicate ? u / p : (u - p) / (1.0 - p);
    auto target = static_cast<std::uint64_t>(v * static_cast<double>(total));
    if (target >= total) target = total - 1;
    std::size_t colour = 0;
    while (target >= counts[colour]) target -= counts[colour++];
    if (duplicate) {
      ++counts[colour];
      ++total;
    } else {
      --counts[colour];
      --total;
      if (counts[colour] == 0) --alive;
    }
    ++n;
  }
  out.steps = n;
  out.fractions.assign(counts.size(), 0.0);
  if (total == 0) {
    out.all_extinct = true;
    return out;
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.fractions[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  if (alive == 1) {
    out.survivor = static_cast<std::size_t>(
        std::find_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) -
        counts.begin());
  }
  return out;
}

}  // namespace urn
