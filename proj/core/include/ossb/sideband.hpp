#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace ossb {

/// Complex amplitudes of the modulation sidebands, one per integer order in
/// [-n_max, n_max], relative to a unit input field.
class SidebandSpectrum {
 public:
  /// `amplitudes[i]` is the amplitude of order i - n_max. Throws
  /// std::invalid_argument when the size is not 2 n_max + 1, an amplitude is
  /// not finite, or the total power exceeds 1 + 1e-9.
  SidebandSpectrum(int n_max, std::vector<std::complex<double>> amplitudes);

  int n_max() const { return n_max_; }
  bool contains(int order) const { return order >= -n_max_ && order <= n_max_; }

  /// Throws std::out_of_range outside the truncation.
  std::complex<double> amplitude(int order) const;
  double power(int order) const { return std::norm(amplitude(order)); }
  double total_power() const;

  std::span<const std::complex<double>> amplitudes() const { return amplitudes_; }

 private:
  int n_max_;
  std::vector<std::complex<double>> amplitudes_;
};

/// RF phase alpha and optical carrier phase theta of one phase modulator.
struct Bias {
  double alpha = 0.0;
  double theta = 0.0;

  friend bool operator==(const Bias&, const Bias&) = default;
};

using BiasSet = std::array<Bias, 4>;

/// Maps an angle onto [0, 2pi).
double normalize_angle(double radians);

/// Drive state of the four-phase-modulator single-sideband modulator.
class ModulatorConfig {
 public:
  /// RF frequencies above this are accepted but exceed typical phase
  /// modulator bandwidth.
  static constexpr double kBandwidthHintGhz = 100.0;

  /// Throws std::invalid_argument unless m >= 0, f_m > 0 and
  /// insertion_loss_db >= 0 (all finite). Bias angles are normalized.
  ModulatorConfig(double m, double f_m_ghz, const BiasSet& biases,
                  double insertion_loss_db = 0.0);

  double m() const { return m_; }
  double f_m() const { return f_m_; }
  const BiasSet& biases() const { return biases_; }
  double insertion_loss_db() const { return insertion_loss_db_; }
  bool exceeds_bandwidth_hint() const { return f_m_ > kBandwidthHintGhz; }

  ModulatorConfig with_m(double m) const;
  ModulatorConfig with_biases(const BiasSet& biases) const;

  friend bool operator==(const ModulatorConfig&, const ModulatorConfig&) = default;

 private:
  double m_;
  double f_m_;
  BiasSet biases_;
  double insertion_loss_db_;
};

/// Bias settings (alpha, theta) = (0,0), (pi,pi), (pi/2,pi/2), (3pi/2,3pi/2)
/// that keep only orders n = 3 (mod 4), i.e. a downshift by f_m.
BiasSet paper_bias_preset();

/// ceil(m) + 20; the discarded tail power is below 1e-12.
int default_truncation(double m);

/// Single phase modulator behind a Y-branch:
/// a_n = (1/2) e^{i theta} J_n(m) e^{i n alpha}.
SidebandSpectrum pm_sidebands(double m, double theta, double alpha, int n_max);

/// Coherent sum of the four branches, a_n = (1/4) sum_k e^{i theta_k} J_n(m)
/// e^{i n alpha_k}, scaled in amplitude by 10^(-insertion_loss_db / 20).
SidebandSpectrum ossb_compose(const ModulatorConfig& config, int n_max);
SidebandSpectrum ossb_compose(const ModulatorConfig& config);

/// |a_order|^2.
double conversion_efficiency(const SidebandSpectrum& spectrum, int order);

/// 10 log10(|a_target|^2 / max_{n != target} |a_n|^2). Returns +infinity when
/// every other order is below 1e-30 in power; throws std::domain_error when
/// the target power is itself below 1e-30 (a nulled order).
double suppression_ratio_db(const SidebandSpectrum& spectrum, int target_order);

/// Linear electro-optic relation m = pi v_rf / v_pi.
double modulation_index(double v_rf, double v_pi);
/// Inverse of modulation_index: v_rf = m v_pi / pi.
double drive_voltage(double m, double v_pi);

}  // namespace ossb
