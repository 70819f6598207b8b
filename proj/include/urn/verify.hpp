#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "urn/params.hpp"

namespace urn {

/// One accept/reject check: pass iff low <= value <= high.
struct Gate {
  std::string name;
  double value;
  double low;
  double high;
  bool pass;
};

Gate make_gate(std::string name, double value, double low, double high);

struct Verification {
  nlohmann::json results;
  std::vector<Gate> gates;

  bool pass() const;
};

nlohmann::json to_json(const Gate& gate);

/// Fixed point of T: two-sample KS between the single-colour limit law and
/// its T-image, mean preservation, and Wasserstein-1 contraction over three
/// iterations from the point mass at 1.
Verification verify_fixed_point(const Params& params, std::uint64_t samples, std::uint64_t seed,
                                unsigned workers);

/// Monte Carlo equalization frequency against the closed form; with w = 1
/// the interval's lower end must not exceed the exponential bound.
Verification verify_equalization(const Params& params, std::uint64_t b, std::uint64_t w,
                                 std::uint64_t trials, std::uint64_t max_steps,
                                 std::uint64_t seed, unsigned workers);

/// Pooled log M_n / log N_n slope against 1/beta (+-0.05) and against the
/// [p/beta, 1/beta] envelope widened by the slope standard error.
Verification verify_exponent(const Params& params, std::uint64_t steps, std::uint64_t trials,
                             std::uint64_t n_min, std::uint64_t seed, unsigned workers);

/// At least 90% of runs have no leadership change in the second half.
Verification verify_dominance(const Params& params, std::uint64_t steps, std::uint64_t trials,
                              std::uint64_t seed, unsigned workers);

}  // namespace urn
