#include "ossb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ossb {
namespace {

struct Grid {
  double lo;
  double step;
  std::size_t points;
};

Grid make_grid(const PhotonSpectrum& a, const PhotonSpectrum& b, const QuadratureSpec& q) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double max_sigma = 0.0;
  double min_sigma = std::numeric_limits<double>::infinity();
  for (const auto* spectrum : {&a, &b}) {
    for (const auto& c : spectrum->components()) {
      lo = std::min(lo, c.center);
      hi = std::max(hi, c.center);
      max_sigma = std::max(max_sigma, c.sigma_amp);
      min_sigma = std::min(min_sigma, c.sigma_amp);
    }
  }
  lo -= q.half_width * max_sigma;
  hi += q.half_width * max_sigma;
  const auto intervals =
      static_cast<std::size_t>(std::ceil((hi - lo) / (q.step_fraction * min_sigma)));
  return {lo, (hi - lo) / static_cast<double>(intervals), intervals + 1};
}

// Samples the spectral amplitude on the grid. Components contribute only
// within half_width of their own sigma; beyond that they are below 1e-31.
std::vector<std::complex<double>> sample(const PhotonSpectrum& p, const Grid& g,
                                         const QuadratureSpec& q) {
  std::vector<std::complex<double>> values(g.points, {0.0, 0.0});
  for (const auto& c : p.components()) {
    const double scale = std::pow(std::numbers::pi * c.sigma_amp * c.sigma_amp, -0.25);
    const double reach = q.half_width * c.sigma_amp;
    for (std::size_t k = 0; k < g.points; ++k) {
      const double f = g.lo + g.step * static_cast<double>(k);
      const double u = f - c.center;
      if (std::fabs(u) > reach) continue;
      values[k] += c.weight * (scale * std::exp(-u * u / (2.0 * c.sigma_amp * c.sigma_amp)));
    }
  }
  return values;
}

std::complex<double> trapezoid(const std::vector<std::complex<double>>& x,
                               const std::vector<std::complex<double>>& y, const Grid& g,
                               double delay_ps) {
  const double tau = 2.0 * std::numbers::pi * 1e-3 * delay_ps;
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t k = 0; k < g.points; ++k) {
    const double f = g.lo + g.step * static_cast<double>(k);
    const double weight = (k == 0 || k + 1 == g.points) ? 0.5 : 1.0;
    sum += weight * std::conj(x[k]) * y[k] * std::polar(1.0, tau * f);
  }
  return sum * g.step;
}

double sum_norm_squared(const std::vector<std::complex<double>>& x, const Grid& g) {
  double sum = 0.0;
  for (std::size_t k = 0; k < g.points; ++k) {
    const double weight = (k == 0 || k + 1 == g.points) ? 0.5 : 1.0;
    sum += weight * std::norm(x[k]);
  }
  return sum * g.step;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(half_width >= 8.0) || !std::isfinite(half_width)) {
    throw std::domain_error("QuadratureSpec: half_width must be >= 8");
  }
  if (!(step_fraction > 0.0 && step_fraction <= 0.01)) {
    throw std::domain_error("QuadratureSpec: step_fraction must lie in (0, 1/100]");
  }
}

std::complex<double> quadrature_overlap(const PhotonSpectrum& a, const PhotonSpectrum& b,
                                        double delay_ps, const QuadratureSpec& q) {
  q.validate();
  const Grid g = make_grid(a, b, q);
  return trapezoid(sample(a, g, q), sample(b, g, q), g, delay_ps);
}

double oracle_coincidence(const PhotonSpectrum& s, const PhotonSpectrum& i, double delay_ps,
                          const QuadratureSpec& q) {
  q.validate();
  const Grid g = make_grid(s, i, q);
  const auto sv = sample(s, g, q);
  const auto iv = sample(i, g, q);
  const double overlap_sq = std::norm(trapezoid(sv, iv, g, delay_ps));
  const double norms = sum_norm_squared(sv, g) * sum_norm_squared(iv, g);
  const double p = 0.5 * (1.0 - overlap_sq / norms);
  return std::clamp(p, 0.0, 0.5);
}

double oracle_visibility(const PhotonSpectrum& s, const PhotonSpectrum& i,
                         const QuadratureSpec& q) {
  return 1.0 - 2.0 * oracle_coincidence(s, i, 0.0, q);
}

double residual_sideband_penalty(double m, double f_m, const PhotonSpectrum& signal,
                                 const PhotonSpectrum& idler_before_modulator,
                                 const QuadratureSpec& q) {
  const ModulatorConfig config(m, f_m, paper_bias_preset());
  const SidebandSpectrum full = ossb_compose(config);

  std::vector<std::complex<double>> first_only(full.amplitudes().size(), {0.0, 0.0});
  first_only[static_cast<std::size_t>(full.n_max() - 1)] = full.amplitude(-1);
  const SidebandSpectrum first(full.n_max(), std::move(first_only));

  const double v_full = oracle_visibility(signal, apply_modulator(idler_before_modulator, full, f_m), q);
  const double v_first =
      oracle_visibility(signal, apply_modulator(idler_before_modulator, first, f_m), q);
  if (!(v_first > 0.0)) {
    throw std::domain_error("residual_sideband_penalty: first-order visibility is zero");
  }
  return 1.0 - v_full / v_first;
}

}  // namespace ossb
