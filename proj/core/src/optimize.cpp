#include "ossb/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace ossb {
namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr double kCoordinateWindow = 0.5;
constexpr double kCoordinateTol = 1e-7;

}  // namespace

OptimizationResult golden_section_maximize(const std::function<double(double)>& f, double lo,
                                           double hi, double tol, int max_iter,
                                           const std::function<void(const BracketStep&)>& observer) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_maximize: need lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("golden_section_maximize: tol must be positive");

  const double lo0 = lo;
  const double hi0 = hi;
  double f_lo = f(lo);
  double f_hi = f(hi);
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);

  int iter = 0;
  while (hi - lo > tol && iter < max_iter) {
    if (f1 >= f2) {
      hi = x2;
      f_hi = f2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      f_lo = f1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
    ++iter;
    if (observer) observer({lo, x1, x2, hi, f_lo, f1, f2, f_hi});
  }

  OptimizationResult r;
  const double x = 0.5 * (lo + hi);
  r.point = {x};
  r.value = f(x);
  r.iterations = iter;
  r.tolerance_achieved = hi - lo;
  r.converged = hi - lo <= tol;
  if (!r.converged) r.diagnostic = "iteration cap reached";

  // The bracket collapses onto an end when the maximum is not interior.
  const double f_lo0 = f(lo0);
  const double f_hi0 = f(hi0);
  if (x - lo0 <= 2.0 * tol && f_lo0 >= r.value) {
    r.point = {lo0};
    r.value = f_lo0;
    r.at_boundary = true;
  } else if (hi0 - x <= 2.0 * tol && f_hi0 >= r.value) {
    r.point = {hi0};
    r.value = f_hi0;
    r.at_boundary = true;
  }
  if (r.at_boundary) {
    r.converged = false;
    r.diagnostic = "maximum at bracket boundary; no interior maximum";
  }
  return r;
}

OptimizationResult maximize_conversion(int order, double lo, double hi, double tol) {
  if (!(lo >= 0.0 && lo < hi && hi <= 10.0)) {
    throw std::invalid_argument("maximize_conversion: bracket must satisfy 0 <= lo < hi <= 10");
  }
  if (!(tol >= 1e-6)) throw std::invalid_argument("maximize_conversion: tol must be >= 1e-6");

  const ModulatorConfig base(lo, 1.0, paper_bias_preset());
  const auto objective = [&](double m) {
    return conversion_efficiency(ossb_compose(base.with_m(m)), order);
  };
  return golden_section_maximize(objective, lo, hi, tol);
}

double TrimObjective::evaluate(const ModulatorConfig& config) const {
  const SidebandSpectrum spectrum = ossb_compose(config);
  if (kind == Kind::kEfficiency) return conversion_efficiency(spectrum, order);
  if (spectrum.power(order) < 1e-30) return -HUGE_VAL;
  return suppression_ratio_db(spectrum, order);
}

TrimResult trim_biases(const ModulatorConfig& perturbed, const TrimObjective& objective,
                       double tol, int max_iter) {
  ModulatorConfig current = perturbed;
  double best = objective.evaluate(current);

  const auto set_angle = [](BiasSet biases, int coordinate, double value) {
    Bias& b = biases[static_cast<std::size_t>(coordinate / 2)];
    (coordinate % 2 == 0 ? b.alpha : b.theta) = value;
    return biases;
  };
  const auto get_angle = [](const BiasSet& biases, int coordinate) {
    const Bias& b = biases[static_cast<std::size_t>(coordinate / 2)];
    return coordinate % 2 == 0 ? b.alpha : b.theta;
  };

  OptimizationResult r;
  int sweep = 0;
  double improvement = 0.0;
  bool converged = false;
  while (sweep < max_iter && !converged) {
    const double start = best;
    if (std::isinf(best) && best > 0.0) {
      converged = true;
      break;
    }
    for (int c = 0; c < 8; ++c) {
      const double x0 = get_angle(current.biases(), c);
      const auto along = [&](double x) {
        return objective.evaluate(current.with_biases(set_angle(current.biases(), c, x)));
      };
      const OptimizationResult line =
          golden_section_maximize(along, x0 - kCoordinateWindow, x0 + kCoordinateWindow,
                                  kCoordinateTol);
      if (line.value >= best + tol) {
        ModulatorConfig candidate =
            current.with_biases(set_angle(current.biases(), c, line.point.front()));
        const double value = objective.evaluate(candidate);
        if (value >= best + tol) {
          current = std::move(candidate);
          best = value;
        }
      }
    }
    ++sweep;
    improvement = best - start;
    if (!(improvement >= tol)) converged = true;
  }

  r.point.reserve(8);
  for (int c = 0; c < 8; ++c) r.point.push_back(get_angle(current.biases(), c));
  r.value = best;
  r.iterations = sweep;
  r.converged = converged;
  r.tolerance_achieved = improvement;
  if (!converged) r.diagnostic = "sweep cap reached before improvement fell below tol";
  return TrimResult{current, r};
}

}  // namespace ossb
