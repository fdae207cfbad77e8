#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ossb/sideband.hpp"

namespace ossb {

struct OptimizationResult {
  std::vector<double> point;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  bool at_boundary = false;
  /// Final bracket width (scalar search) or last objective improvement
  /// (bias trimming).
  double tolerance_achieved = 0.0;
  std::string diagnostic;
};

/// State of the golden-section bracket after each iteration.
struct BracketStep {
  double lo, x1, x2, hi;
  double f_lo, f1, f2, f_hi;
};

/// Golden-section maximization of a unimodal f on [lo, hi]. Converged means
/// the bracket shrank below `tol` around an interior point; a maximum pinned
/// at an end of the original interval is returned there with
/// converged = false and at_boundary = true.
OptimizationResult golden_section_maximize(
    const std::function<double(double)>& f, double lo, double hi, double tol,
    int max_iter = 200, const std::function<void(const BracketStep&)>& observer = {});

/// Modulation index in [lo, hi] maximizing the preset-biased conversion
/// efficiency into `order`. Throws std::invalid_argument unless
/// 0 <= lo < hi <= 10 and tol >= 1e-6.
OptimizationResult maximize_conversion(int order, double lo, double hi, double tol);

struct TrimObjective {
  enum class Kind { kSuppression, kEfficiency };

  Kind kind = Kind::kSuppression;
  int order = -1;

  double evaluate(const ModulatorConfig& config) const;
};

struct TrimResult {
  ModulatorConfig config;
  OptimizationResult result;
};

/// Cyclic coordinate ascent over the eight bias angles (alpha_1, theta_1,
/// ..., alpha_4, theta_4), one golden-section search per coordinate over
/// +/-0.5 rad around its current value. A coordinate move is kept only when
/// it improves the objective by at least `tol`, so the objective never
/// decreases and a configuration with no such move is returned unchanged.
/// Stops when a full sweep improves by less than `tol` or after `max_iter`
/// sweeps.
TrimResult trim_biases(const ModulatorConfig& perturbed, const TrimObjective& objective,
                       double tol, int max_iter);

}  // namespace ossb
