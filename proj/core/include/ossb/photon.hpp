#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "ossb/sideband.hpp"

namespace ossb {

/// Frequencies are GHz offsets from a reference (half the pump frequency);
/// delays are ps. The spectral phase of a delay d is exp(i 2pi f d 1e-3).
inline constexpr double kDelayPhasePerGhzPs = 2.0 * std::numbers::pi * 1e-3;

/// The width sigma appearing in the closed-form HOM coincidence rate equals
/// sqrt(2) times the amplitude-profile standard deviation used here.
inline constexpr double kHomSigmaPerAmplitudeSigma = std::numbers::sqrt2;

/// One unit-norm Gaussian spectral amplitude
/// g(f) = (pi sigma^2)^(-1/4) exp(-(f - center)^2 / (2 sigma^2)), times weight.
struct GaussianComponent {
  double center = 0.0;     // GHz
  double sigma_amp = 1.0;  // GHz
  std::complex<double> weight{1.0, 0.0};
};

/// Single-photon spectral amplitude as a sum of Gaussian components. The L2
/// norm lies in (0, 1]; a norm below one is the photon survival probability
/// amplitude after loss.
class PhotonSpectrum {
 public:
  /// Throws std::invalid_argument on empty input, sigma_amp <= 0, non-finite
  /// fields, or a norm outside (0, 1 + 1e-9].
  explicit PhotonSpectrum(std::vector<GaussianComponent> components);

  std::span<const GaussianComponent> components() const { return components_; }
  double norm() const;
  double norm_squared() const { return norm_squared_; }

 private:
  std::vector<GaussianComponent> components_;
  double norm_squared_;
};

/// Unit-norm photon behind a Gaussian filter: sigma_amp = sigma_convention *
/// fwhm_3db. Throws std::domain_error for non-positive fwhm or constant.
PhotonSpectrum from_filter(double center, double fwhm_3db, double sigma_convention);

/// Unit-norm photon whose width matches `hom_sigma` of the closed-form
/// coincidence rate.
PhotonSpectrum from_hom_sigma(double center, double hom_sigma);

/// Filter calibration constant c with c * fwhm_3db * sqrt(2) = hom_sigma.
double filter_sigma_constant(double hom_sigma, double fwhm_3db);

/// Frequency-domain action of the modulator: every component is replicated at
/// center + n f_m with its weight multiplied by a_n. Orders with |a_n|^2 below
/// 1e-30 are dropped. Throws std::domain_error if nothing survives.
PhotonSpectrum apply_modulator(const PhotonSpectrum& photon, const SidebandSpectrum& ossb,
                               double f_m);

/// Closed-form integral of conj(a(f)) b(f) exp(i 2pi f delay 1e-3) df.
std::complex<double> overlap(const PhotonSpectrum& a, const PhotonSpectrum& b,
                             double delay_ps);

}  // namespace ossb
