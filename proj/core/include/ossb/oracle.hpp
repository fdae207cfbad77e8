#pragma once

#include <complex>

#include "ossb/photon.hpp"

namespace ossb {

/// Uniform trapezoid grid used by the brute-force interference calculator.
/// The grid spans every component center +/- half_width times the largest
/// sigma_amp, with a step of step_fraction times the smallest sigma_amp.
struct QuadratureSpec {
  double half_width = 12.0;
  double step_fraction = 1.0 / 200.0;

  /// Throws std::domain_error unless half_width >= 8 and
  /// 0 < step_fraction <= 1/100.
  void validate() const;
};

/// Overlap integral of conj(a) b exp(i 2pi f delay 1e-3) by grid quadrature.
/// Shares no code with the closed-form ossb::overlap.
std::complex<double> quadrature_overlap(const PhotonSpectrum& a, const PhotonSpectrum& b,
                                        double delay_ps, const QuadratureSpec& q = {});

/// Coincidence probability of two independent single photons at a balanced
/// beamsplitter, (1/2) (1 - |<s|i>_d|^2 / (|s|^2 |i|^2)), every term by
/// quadrature.
double oracle_coincidence(const PhotonSpectrum& s, const PhotonSpectrum& i, double delay_ps,
                          const QuadratureSpec& q = {});

/// Dip visibility at zero delay, 1 - 2 P_c(0).
double oracle_visibility(const PhotonSpectrum& s, const PhotonSpectrum& i,
                         const QuadratureSpec& q = {});

/// Visibility lost to the higher OSSB orders. The idler passes through the
/// lossless preset modulator at (m, f_m) with every order kept, and the
/// zero-delay visibility against the signal is compared with the one obtained
/// when only the -1 order is kept: 1 - V_full / V_first_order.
double residual_sideband_penalty(double m, double f_m, const PhotonSpectrum& signal,
                                 const PhotonSpectrum& idler_before_modulator,
                                 const QuadratureSpec& q = {});

}  // namespace ossb
