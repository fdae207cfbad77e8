#include "ossb/hom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ossb/photon.hpp"

namespace ossb {
namespace {

double width_sum(const HomParams& p) { return p.sigma_s * p.sigma_s + p.sigma_i * p.sigma_i; }

double width_prefactor(const HomParams& p) { return p.sigma_s * p.sigma_i / width_sum(p); }

}  // namespace

void HomParams::validate() const {
  if (!std::isfinite(sigma_s) || !(sigma_s > 0.0) || !std::isfinite(sigma_i) ||
      !(sigma_i > 0.0)) {
    throw std::invalid_argument("HomParams: sigma_s and sigma_i must be positive");
  }
  if (!std::isfinite(delta) || delta < 0.0) {
    throw std::invalid_argument("HomParams: delta must be >= 0");
  }
  if (car && (!std::isfinite(*car) || !(*car > 0.0))) {
    throw std::invalid_argument("HomParams: car must be positive");
  }
}

double coincidence_rate(double delay_ps, const HomParams& p) {
  p.validate();
  const double d = kDelayPhasePerGhzPs * delay_ps;
  const double s2 = width_sum(p);
  const double exponent =
      -(p.sigma_s * p.sigma_s * p.sigma_i * p.sigma_i * d * d + 4.0 * p.delta * p.delta) /
      (2.0 * s2);
  return 0.5 - width_prefactor(p) * std::exp(exponent);
}

double visibility(const HomParams& p) {
  p.validate();
  return 2.0 * width_prefactor(p) * std::exp(-4.0 * p.delta * p.delta / (2.0 * width_sum(p)));
}

double dip_width_ps(const HomParams& p) {
  p.validate();
  return std::sqrt(width_sum(p)) / (p.sigma_s * p.sigma_i * kDelayPhasePerGhzPs);
}

double calibrate_sigma(double target_v, double delta) {
  if (!(target_v > 0.0 && target_v < 1.0)) {
    throw std::domain_error("calibrate_sigma: target visibility must lie in (0, 1)");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::domain_error("calibrate_sigma: delta must be positive");
  }
  return delta / std::sqrt(-std::log(target_v));
}

double noisy_visibility(double v_ideal, double car) {
  if (!(v_ideal >= 0.0 && v_ideal <= 1.0)) {
    throw std::domain_error("noisy_visibility: v_ideal must lie in [0, 1]");
  }
  if (!(car > 0.0)) throw std::domain_error("noisy_visibility: car must be positive");
  if (std::isinf(car)) return v_ideal;
  return v_ideal * car / (car + 2.0);
}

double misalignment_penalty(double delta_err, double sigma_s, double sigma_i) {
  if (!(delta_err >= 0.0) || !(sigma_s > 0.0) || !(sigma_i > 0.0)) {
    throw std::domain_error("misalignment_penalty: inputs must be positive");
  }
  const double s2 = sigma_s * sigma_s + sigma_i * sigma_i;
  return 1.0 - std::exp(-4.0 * delta_err * delta_err / (2.0 * s2));
}

double visibility_budget(std::span<const BudgetFactor> factors) {
  double v = 1.0;
  for (const auto& f : factors) {
    if (!(f.value >= 0.0 && f.value <= 1.0)) {
      throw std::domain_error("visibility_budget: factor '" + f.label + "' outside [0, 1]");
    }
    v *= f.retained();
  }
  return v;
}

DipCurve dip_curve(const HomParams& p, std::span<const double> delays, bool apply_noise) {
  p.validate();
  if (delays.size() < 5) throw std::invalid_argument("dip_curve: need at least 5 delays");
  if (apply_noise && !p.car) throw std::invalid_argument("dip_curve: noise requested without car");

  const double depth_scale = apply_noise ? *p.car / (*p.car + 2.0) : 1.0;
  DipCurve curve;
  curve.samples.reserve(delays.size());
  for (double d : delays) {
    // R_c(inf) = 1/2, so 2 R_c(d) is the normalized rate.
    const double dip = 1.0 - 2.0 * coincidence_rate(d, p);
    curve.samples.push_back({d, 1.0 - depth_scale * dip});
  }
  std::sort(curve.samples.begin(), curve.samples.end(),
            [](const DipSample& a, const DipSample& b) { return a.delay_ps < b.delay_ps; });
  return curve;
}

}  // namespace ossb
