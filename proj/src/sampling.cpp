#include "urn/sampling.hpp"

#include <string>

#include "urn/error.hpp"

namespace urn {

namespace {

void require_rate(double rate) {
  if (!(rate > 0.0)) {
    throw UrnError(ErrorKind::Domain, "rate must be positive, got " + std::to_string(rate));
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double sample(const DistSpec& dist, RngStream& rng) {
  return std::visit(
      Overloaded{
          [&](const Exponential& d) {
            require_rate(d.rate);
            return rng.exponential(d.rate);
          },
          [&](const Bernoulli& d) {
            if (!(d.q >= 0.0 && d.q <= 1.0)) {
              throw UrnError(ErrorKind::Domain, "Bernoulli q must lie in [0, 1]");
            }
            return rng.bernoulli(d.q) ? 1.0 : 0.0;
          },
          [&](const GammaInt& d) {
            require_rate(d.rate);
            if (d.shape == 0) throw UrnError(ErrorKind::Domain, "Gamma shape must be >= 1");
            double sum = 0.0;
            for (std::uint32_t i = 0; i < d.shape; ++i) sum += rng.exponential(d.rate);
            return sum;
          },
          [&](const Uniform01&) { return rng.uniform(); },
      },
      dist);
}

}  // namespace urn
