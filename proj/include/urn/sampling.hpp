#pragma once

#include <cstdint>
#include <variant>

#include "urn/rng.hpp"

namespace urn {

struct Exponential {
  double rate;
};
struct Bernoulli {
  double q;
};
/// Gamma with integer shape and rate (mean shape/rate).
struct GammaInt {
  std::uint32_t shape;
  double rate;
};
struct Uniform01 {};

using DistSpec = std::variant<Exponential, Bernoulli, GammaInt, Uniform01>;

/// One draw from `dist`. Throws Domain on a non-positive rate or shape, or a
/// Bernoulli probability outside [0, 1].
double sample(const DistSpec& dist, RngStream& rng);

}  // namespace urn
