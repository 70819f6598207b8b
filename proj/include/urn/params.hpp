#pragma once

namespace urn {

/// Model parameter p together with the derived constants
///   beta  = p / (2p - 1)   (p > 1/2)
///   gamma = (1 - p) / p    (p >= 1/2), the extinction probability of a colour.
///
/// Simulators accept any p in [0, 1]; the analytic limit laws need p > 1/2.
class Params {
 public:
  /// Supercritical parameters, 1/2 < p <= 1. Throws ParamDomain otherwise.
  static Params derived(double p);
  /// Any p in [0, 1]; derived constants are only available where defined.
  static Params simulation(double p);

  double p() const noexcept { return p_; }
  /// 2p - 1, the exponential growth rate of a single colour.
  double drift() const noexcept { return 2.0 * p_ - 1.0; }

  bool supercritical() const noexcept { return p_ > 0.5; }

  /// Throws ParamDomain unless p > 1/2.
  double beta() const;
  /// Throws ParamDomain unless p >= 1/2.
  double gamma() const;

 private:
  explicit Params(double p) noexcept : p_(p) {}
  double p_;
};

/// Same as Params::derived.
Params derive_params(double p);

/// Throws ParamDomain unless params are supercritical; `what` names the caller.
void require_supercritical(const Params& params, const char* what);

}  // namespace urn
