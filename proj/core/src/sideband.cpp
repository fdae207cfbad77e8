#include "ossb/sideband.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ossb/bessel.hpp"

namespace ossb {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPowerSlack = 1e-9;
constexpr double kNegligiblePower = 1e-30;

void check_truncation(int n_max) {
  if (n_max < 1 || n_max > kBesselMaxOrder) {
    throw std::invalid_argument("sideband truncation n_max=" + std::to_string(n_max) +
                                " outside [1, " + std::to_string(kBesselMaxOrder) + "]");
  }
}

}  // namespace

SidebandSpectrum::SidebandSpectrum(int n_max, std::vector<std::complex<double>> amplitudes)
    : n_max_(n_max), amplitudes_(std::move(amplitudes)) {
  if (n_max_ < 0 || amplitudes_.size() != static_cast<std::size_t>(2 * n_max_ + 1)) {
    throw std::invalid_argument("SidebandSpectrum: expected 2*n_max+1 amplitudes");
  }
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("SidebandSpectrum: non-finite amplitude");
    }
  }
  if (total_power() > 1.0 + kPowerSlack) {
    throw std::invalid_argument("SidebandSpectrum: total power exceeds unity");
  }
}

std::complex<double> SidebandSpectrum::amplitude(int order) const {
  if (!contains(order)) {
    throw std::out_of_range("sideband order " + std::to_string(order) +
                            " outside truncation " + std::to_string(n_max_));
  }
  return amplitudes_[static_cast<std::size_t>(order + n_max_)];
}

double SidebandSpectrum::total_power() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum;
}

double normalize_angle(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // fmod of a tiny negative can round up to 2pi
  return r;
}

ModulatorConfig::ModulatorConfig(double m, double f_m_ghz, const BiasSet& biases,
                                 double insertion_loss_db)
    : m_(m), f_m_(f_m_ghz), biases_(biases), insertion_loss_db_(insertion_loss_db) {
  if (!std::isfinite(m_) || m_ < 0.0) {
    throw std::invalid_argument("ModulatorConfig: m must be finite and >= 0");
  }
  if (!std::isfinite(f_m_) || f_m_ <= 0.0) {
    throw std::invalid_argument("ModulatorConfig: f_m must be finite and > 0");
  }
  if (!std::isfinite(insertion_loss_db_) || insertion_loss_db_ < 0.0) {
    throw std::invalid_argument("ModulatorConfig: insertion_loss_db must be finite and >= 0");
  }
  for (auto& b : biases_) {
    if (!std::isfinite(b.alpha) || !std::isfinite(b.theta)) {
      throw std::invalid_argument("ModulatorConfig: bias angles must be finite");
    }
    b.alpha = normalize_angle(b.alpha);
    b.theta = normalize_angle(b.theta);
  }
}

ModulatorConfig ModulatorConfig::with_m(double m) const {
  return ModulatorConfig(m, f_m_, biases_, insertion_loss_db_);
}

ModulatorConfig ModulatorConfig::with_biases(const BiasSet& biases) const {
  return ModulatorConfig(m_, f_m_, biases, insertion_loss_db_);
}

BiasSet paper_bias_preset() {
  constexpr double pi = std::numbers::pi;
  return {Bias{0.0, 0.0}, Bias{pi, pi}, Bias{pi / 2.0, pi / 2.0},
          Bias{3.0 * pi / 2.0, 3.0 * pi / 2.0}};
}

int default_truncation(double m) { return static_cast<int>(std::ceil(m)) + 20; }

SidebandSpectrum pm_sidebands(double m, double theta, double alpha, int n_max) {
  check_truncation(n_max);
  std::vector<std::complex<double>> amps(static_cast<std::size_t>(2 * n_max + 1));
  for (int n = -n_max; n <= n_max; ++n) {
    const double phase = theta + n * alpha;
    amps[static_cast<std::size_t>(n + n_max)] = 0.5 * bessel_j(n, m) * std::polar(1.0, phase);
  }
  return SidebandSpectrum(n_max, std::move(amps));
}

SidebandSpectrum ossb_compose(const ModulatorConfig& config, int n_max) {
  check_truncation(n_max);
  const double loss_scale = std::pow(10.0, -config.insertion_loss_db() / 20.0);
  std::vector<std::complex<double>> amps(static_cast<std::size_t>(2 * n_max + 1));
  for (int n = -n_max; n <= n_max; ++n) {
    const double jn = bessel_j(n, config.m());
    std::complex<double> branch_sum{0.0, 0.0};
    for (const auto& b : config.biases()) {
      branch_sum += std::polar(1.0, b.theta + n * b.alpha);
    }
    amps[static_cast<std::size_t>(n + n_max)] = 0.25 * jn * loss_scale * branch_sum;
  }
  return SidebandSpectrum(n_max, std::move(amps));
}

SidebandSpectrum ossb_compose(const ModulatorConfig& config) {
  return ossb_compose(config, default_truncation(config.m()));
}

double conversion_efficiency(const SidebandSpectrum& spectrum, int order) {
  return spectrum.power(order);
}

double suppression_ratio_db(const SidebandSpectrum& spectrum, int target_order) {
  const double target = spectrum.power(target_order);
  if (target < kNegligiblePower) {
    throw std::domain_error("suppression_ratio_db: target order " +
                            std::to_string(target_order) + " has zero amplitude");
  }
  double largest_other = 0.0;
  for (int n = -spectrum.n_max(); n <= spectrum.n_max(); ++n) {
    if (n != target_order) largest_other = std::max(largest_other, spectrum.power(n));
  }
  if (largest_other < kNegligiblePower) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(target / largest_other);
}

double modulation_index(double v_rf, double v_pi) {
  if (!(v_pi > 0.0) || !std::isfinite(v_pi)) {
    throw std::domain_error("modulation_index: v_pi must be positive");
  }
  if (!(v_rf >= 0.0) || !std::isfinite(v_rf)) {
    throw std::domain_error("modulation_index: v_rf must be non-negative");
  }
  return std::numbers::pi * v_rf / v_pi;
}

double drive_voltage(double m, double v_pi) {
  if (!(v_pi > 0.0) || !std::isfinite(v_pi)) {
    throw std::domain_error("drive_voltage: v_pi must be positive");
  }
  if (!(m >= 0.0) || !std::isfinite(m)) {
    throw std::domain_error("drive_voltage: m must be non-negative");
  }
  return m * v_pi / std::numbers::pi;
}

}  // namespace ossb
