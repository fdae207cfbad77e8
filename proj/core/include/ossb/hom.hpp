#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ossb {

/// Signal/idler widths and center-frequency detuning (all GHz) of a
/// two-photon interference measurement, plus the optional coincidence to
/// accidental ratio of the pair source.
struct HomParams {
  double sigma_s = 1.0;
  double sigma_i = 1.0;
  double delta = 0.0;
  std::optional<double> car;

  /// Throws std::invalid_argument when sigma_s, sigma_i <= 0, delta < 0, or
  /// car <= 0 (all finite).
  void validate() const;

  friend bool operator==(const HomParams&, const HomParams&) = default;
};

// Delays are in ps and widths in GHz; the product sigma * d is multiplied by
// 2pi 1e-3 (see kDelayPhasePerGhzPs) before it enters the exponent.

/// R_c(d) = 1/2 - (s_s s_i / (s_s^2 + s_i^2))
///                exp(-(s_s^2 s_i^2 d'^2 + 4 delta^2) / (2 (s_s^2 + s_i^2)))
/// with d' = 2pi 1e-3 d. The car field is ignored.
double coincidence_rate(double delay_ps, const HomParams& p);

/// (R_c(inf) - R_c(0)) / R_c(inf).
double visibility(const HomParams& p);

/// Standard deviation (ps) of the Gaussian dip traced by coincidence_rate.
double dip_width_ps(const HomParams& p);

/// Equal-width sigma reproducing `target_v` at detuning `delta`:
/// sigma = delta / sqrt(-ln target_v). Throws std::domain_error unless
/// 0 < target_v < 1 and delta > 0.
double calibrate_sigma(double target_v, double delta);

/// Accidental floor from two uncorrelated channels: v car / (car + 2).
double noisy_visibility(double v_ideal, double car);

/// Fractional visibility loss from a residual center-frequency error.
double misalignment_penalty(double delta_err, double sigma_s, double sigma_i);

struct BudgetFactor {
  enum class Kind { kPenalty, kFactor };

  std::string label;
  double value = 0.0;
  Kind kind = Kind::kPenalty;

  /// Penalties contribute (1 - value), factors contribute value.
  double retained() const { return kind == Kind::kPenalty ? 1.0 - value : value; }
};

/// Product of the retained fractions of independent degradations. Throws
/// std::domain_error if a value is outside [0, 1].
double visibility_budget(std::span<const BudgetFactor> factors);

struct DipSample {
  double delay_ps = 0.0;
  double coincidence = 0.0;  // normalized to the far-from-dip level
};

struct DipFit {
  double visibility = 0.0;
  double center_ps = 0.0;
  double width_ps = 0.0;
  double rms_residual = 0.0;
  int iterations = 0;
  bool ok = false;
  std::string diagnostic;
};

struct DipCurve {
  std::vector<DipSample> samples;  // sorted by delay
  std::optional<DipFit> fit;
};

/// Samples R_c(d) / R_c(inf) at the given delays (sorted on output). With
/// `apply_noise` the dip depth is scaled by car / (car + 2) while the
/// baseline stays at one; p.car must then be set. Throws
/// std::invalid_argument for fewer than five delays or a missing car.
DipCurve dip_curve(const HomParams& p, std::span<const double> delays, bool apply_noise);

/// Least-squares fit of 1 - V exp(-(d - d0)^2 / (2 w^2)) by damped
/// Gauss-Newton (Levenberg-Marquardt). Initialization: d0 at the lowest
/// sample, V = 1 - minimum, w from the half-depth crossings. Stops when the
/// accepted parameter step is below 1e-10 or after 500 iterations.
/// Degenerate input (fewer than five samples, zero variance, no dip) yields
/// ok = false with a diagnostic instead of an exception.
DipFit fit_visibility(const DipCurve& curve);

}  // namespace ossb
