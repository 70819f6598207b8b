#include "urn/params.hpp"

#include <cmath>
#include <string>

#include "urn/error.hpp"

namespace urn {

Params Params::derived(double p) {
  if (!(p > 0.5 && p <= 1.0)) {
    throw UrnError(ErrorKind::ParamDomain,
                   "derived constants need 1/2 < p <= 1, got p=" + std::to_string(p));
  }
  return Params(p);
}

Params Params::simulation(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw UrnError(ErrorKind::ParamDomain, "p must lie in [0, 1], got p=" + std::to_string(p));
  }
  return Params(p);
}

double Params::beta() const {
  if (!(p_ > 0.5)) {
    throw UrnError(ErrorKind::ParamDomain, "beta is defined only for p > 1/2");
  }
  return p_ / (2.0 * p_ - 1.0);
}

double Params::gamma() const {
  if (!(p_ >= 0.5)) {
    throw UrnError(ErrorKind::ParamDomain, "gamma is defined only for p >= 1/2");
  }
  return (1.0 - p_) / p_;
}

Params derive_params(double p) { return Params::derived(p); }

void require_supercritical(const Params& params, const char* what) {
  if (!params.supercritical()) {
    throw UrnError(ErrorKind::ParamDomain, std::string(what) + " requires p > 1/2");
  }
}

}  // namespace urn
