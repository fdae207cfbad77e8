#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "ossb/hom.hpp"

namespace ossb {
namespace {

constexpr int kMaxIterations = 500;
constexpr double kStepTolerance = 1e-10;
constexpr double kFwhmPerSigma = 2.3548200450309493;  // 2 sqrt(2 ln 2)

struct Params {
  double v;
  double d0;
  double w;
};

double model(const Params& p, double d) {
  const double x = (d - p.d0) / p.w;
  return 1.0 - p.v * std::exp(-0.5 * x * x);
}

double sum_squares(std::span<const DipSample> s, const Params& p) {
  double sse = 0.0;
  for (const auto& x : s) {
    const double r = x.coincidence - model(p, x.delay_ps);
    sse += r * r;
  }
  return sse;
}

// Solves the 3x3 system m x = rhs by Gaussian elimination with partial
// pivoting. Returns false when the matrix is numerically singular.
bool solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> rhs,
            std::array<double, 3>& x) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    }
    if (std::fabs(m[pivot][col]) < 1e-300) return false;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double acc = rhs[r];
    for (int c = r + 1; c < 3; ++c) acc -= m[r][c] * x[c];
    x[r] = acc / m[r][r];
  }
  return true;
}

Params initial_guess(std::span<const DipSample> s) {
  const auto lowest = std::min_element(s.begin(), s.end(), [](const auto& a, const auto& b) {
    return a.coincidence < b.coincidence;
  });
  const double v0 = 1.0 - lowest->coincidence;
  const double level = 1.0 - 0.5 * v0;

  auto left = lowest;
  while (left != s.begin() && left->coincidence < level) --left;
  auto right = lowest;
  while (std::next(right) != s.end() && right->coincidence < level) ++right;

  double w0 = (right->delay_ps - left->delay_ps) / kFwhmPerSigma;
  const double span = s.back().delay_ps - s.front().delay_ps;
  if (!(w0 > 0.0)) w0 = span / 6.0;
  return {v0, lowest->delay_ps, w0};
}

}  // namespace

DipFit fit_visibility(const DipCurve& curve) {
  DipFit fit;
  const auto s = std::span<const DipSample>(curve.samples);
  if (s.size() < 5) {
    fit.diagnostic = "need at least 5 samples";
    return fit;
  }
  if (!std::is_sorted(s.begin(), s.end(),
                      [](const auto& a, const auto& b) { return a.delay_ps < b.delay_ps; })) {
    fit.diagnostic = "samples not sorted by delay";
    return fit;
  }

  const double mean = std::accumulate(s.begin(), s.end(), 0.0,
                                      [](double acc, const auto& x) { return acc + x.coincidence; }) /
                      static_cast<double>(s.size());
  double variance = 0.0;
  double rms_to_unity = 0.0;
  for (const auto& x : s) {
    variance += (x.coincidence - mean) * (x.coincidence - mean);
    rms_to_unity += (x.coincidence - 1.0) * (x.coincidence - 1.0);
  }
  rms_to_unity = std::sqrt(rms_to_unity / static_cast<double>(s.size()));
  if (variance <= 1e-24) {
    fit.rms_residual = rms_to_unity;
    fit.diagnostic = "zero variance: no dip to fit";
    return fit;
  }

  Params p = initial_guess(s);
  if (!(p.v > 0.0)) {
    fit.rms_residual = rms_to_unity;
    fit.diagnostic = "no sample below the unit baseline";
    return fit;
  }

  double sse = sum_squares(s, p);
  double lambda = 1e-3;
  bool converged = false;
  int iter = 0;
  for (; iter < kMaxIterations && !converged; ++iter) {
    std::array<std::array<double, 3>, 3> jtj{};
    std::array<double, 3> jtr{};
    for (const auto& x : s) {
      const double u = (x.delay_ps - p.d0) / p.w;
      const double g = std::exp(-0.5 * u * u);
      const std::array<double, 3> j = {-g, -p.v * g * u / p.w, -p.v * g * u * u / p.w};
      const double r = x.coincidence - model(p, x.delay_ps);
      for (int a = 0; a < 3; ++a) {
        jtr[a] += j[a] * r;
        for (int b = 0; b < 3; ++b) jtj[a][b] += j[a] * j[b];
      }
    }

    // Inner loop raises the damping until a step reduces the residual.
    bool accepted = false;
    while (!accepted && lambda < 1e16) {
      auto damped = jtj;
      for (int a = 0; a < 3; ++a) damped[a][a] += lambda * std::max(jtj[a][a], 1e-300);
      std::array<double, 3> step{};
      if (!solve3(damped, jtr, step)) {
        lambda *= 10.0;
        continue;
      }
      Params trial{p.v + step[0], p.d0 + step[1], p.w + step[2]};
      if (!(trial.w > 0.0)) trial.w = 0.5 * p.w;
      const double trial_sse = sum_squares(s, trial);
      if (trial_sse <= sse) {
        const double max_step =
            std::max({std::fabs(trial.v - p.v), std::fabs(trial.d0 - p.d0),
                      std::fabs(trial.w - p.w)});
        p = trial;
        sse = trial_sse;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (max_step < kStepTolerance) converged = true;
      } else {
        lambda *= 10.0;
      }
    }
    // No descent direction left at any damping: already at the minimum.
    if (!accepted) converged = true;
  }

  fit.visibility = p.v;
  fit.center_ps = p.d0;
  fit.width_ps = std::fabs(p.w);
  fit.rms_residual = std::sqrt(sse / static_cast<double>(s.size()));
  fit.iterations = iter;
  fit.ok = converged;
  if (!converged) {
    fit.diagnostic = "iteration cap reached";
  } else if (p.d0 - fit.width_ps < s.front().delay_ps || p.d0 + fit.width_ps > s.back().delay_ps) {
    fit.ok = false;
    fit.diagnostic = "samples do not span one width on each side of the dip";
  }
  return fit;
}

}  // namespace ossb
