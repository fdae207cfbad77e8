#include "ossb/photon.hpp"

#include <cmath>
#include <stdexcept>

namespace ossb {
namespace {

constexpr double kNegligiblePower = 1e-30;

// Overlap of two unit-norm Gaussians with a linear spectral phase tau f.
// Completing the square gives sqrt(pi/A) exp(B^2/(4A) - C) with
// A = a + b, B = 2(a c1 + b c2) + i tau, C = a c1^2 + b c2^2.
std::complex<double> gaussian_pair(const GaussianComponent& x, const GaussianComponent& y,
                                   double tau) {
  const double a = 0.5 / (x.sigma_amp * x.sigma_amp);
  const double b = 0.5 / (y.sigma_amp * y.sigma_amp);
  const double sum = a + b;
  const double dc = x.center - y.center;
  const double mean = (a * x.center + b * y.center) / sum;

  const double prefactor =
      std::sqrt(std::numbers::pi / sum) / std::sqrt(std::numbers::pi * x.sigma_amp * y.sigma_amp);
  const double exponent = -a * b * dc * dc / sum - tau * tau / (4.0 * sum);
  return prefactor * std::exp(exponent) * std::polar(1.0, tau * mean);
}

std::complex<double> sum_pairs(std::span<const GaussianComponent> a,
                               std::span<const GaussianComponent> b, double tau) {
  std::complex<double> total{0.0, 0.0};
  for (const auto& x : a) {
    for (const auto& y : b) {
      total += std::conj(x.weight) * y.weight * gaussian_pair(x, y, tau);
    }
  }
  return total;
}

}  // namespace

PhotonSpectrum::PhotonSpectrum(std::vector<GaussianComponent> components)
    : components_(std::move(components)), norm_squared_(0.0) {
  if (components_.empty()) {
    throw std::invalid_argument("PhotonSpectrum: no components");
  }
  for (const auto& c : components_) {
    if (!std::isfinite(c.center) || !std::isfinite(c.sigma_amp) || !(c.sigma_amp > 0.0)) {
      throw std::invalid_argument("PhotonSpectrum: component needs finite center and sigma_amp > 0");
    }
    if (!std::isfinite(c.weight.real()) || !std::isfinite(c.weight.imag())) {
      throw std::invalid_argument("PhotonSpectrum: non-finite component weight");
    }
  }
  norm_squared_ = sum_pairs(components_, components_, 0.0).real();
  if (!(norm_squared_ > 0.0) || norm_squared_ > 1.0 + 1e-9) {
    throw std::invalid_argument("PhotonSpectrum: norm outside (0, 1]");
  }
}

double PhotonSpectrum::norm() const { return std::sqrt(norm_squared_); }

PhotonSpectrum from_filter(double center, double fwhm_3db, double sigma_convention) {
  if (!(fwhm_3db > 0.0) || !(sigma_convention > 0.0)) {
    throw std::domain_error("from_filter: fwhm_3db and sigma_convention must be positive");
  }
  return PhotonSpectrum({GaussianComponent{center, sigma_convention * fwhm_3db, {1.0, 0.0}}});
}

PhotonSpectrum from_hom_sigma(double center, double hom_sigma) {
  if (!(hom_sigma > 0.0)) throw std::domain_error("from_hom_sigma: sigma must be positive");
  return PhotonSpectrum(
      {GaussianComponent{center, hom_sigma / kHomSigmaPerAmplitudeSigma, {1.0, 0.0}}});
}

double filter_sigma_constant(double hom_sigma, double fwhm_3db) {
  if (!(hom_sigma > 0.0) || !(fwhm_3db > 0.0)) {
    throw std::domain_error("filter_sigma_constant: inputs must be positive");
  }
  return hom_sigma / (kHomSigmaPerAmplitudeSigma * fwhm_3db);
}

PhotonSpectrum apply_modulator(const PhotonSpectrum& photon, const SidebandSpectrum& ossb,
                               double f_m) {
  std::vector<GaussianComponent> out;
  for (const auto& c : photon.components()) {
    for (int n = -ossb.n_max(); n <= ossb.n_max(); ++n) {
      const auto a = ossb.amplitude(n);
      if (std::norm(a) < kNegligiblePower) continue;
      out.push_back(GaussianComponent{c.center + n * f_m, c.sigma_amp, c.weight * a});
    }
  }
  if (out.empty()) {
    throw std::domain_error("apply_modulator: every sideband is nulled, no photon survives");
  }
  return PhotonSpectrum(std::move(out));
}

std::complex<double> overlap(const PhotonSpectrum& a, const PhotonSpectrum& b,
                             double delay_ps) {
  return sum_pairs(a.components(), b.components(), kDelayPhasePerGhzPs * delay_ps);
}

}  // namespace ossb
