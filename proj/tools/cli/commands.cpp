#include "ossb/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "ossb/cli/preset.hpp"
#include "ossb/oracle.hpp"
#include "ossb/photon.hpp"

namespace ossb::cli {
namespace {

constexpr double kNegligiblePower = 1e-30;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
// Noise share of the published budget (1 - 0.972, rounded).
constexpr double kStatedNoisePenalty = 0.028;

double parse_double(std::string_view text, std::string_view what) {
  const auto first = text.find_first_not_of(' ');
  const auto last = text.find_last_not_of(' ');
  if (first == std::string_view::npos) throw UsageError(fmt::format("empty {}", what));
  text = text.substr(first, last - first + 1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw UsageError(fmt::format("cannot parse {} '{}'", what, text));
  }
  return value;
}

double calibrated_sigma() {
  const auto& preset = experiment_preset();
  return calibrate_sigma(preset.theory[1].visibility, preset.theory[1].detuning_ghz);
}

// One row of a comparison table.
struct Check {
  enum class Kind { kAbsolute, kAtLeast, kAtMost, kRange, kReport };

  std::string quantity;
  double computed;
  double reference;
  Kind kind;
  double a = 0.0;  // tolerance, bound, or range start
  double b = 0.0;  // range end

  std::string tolerance() const {
    switch (kind) {
      case Kind::kAbsolute: return fmt::format("+/-{}", a);
      case Kind::kAtLeast: return fmt::format(">={}", a);
      case Kind::kAtMost: return fmt::format("<{}", a);
      case Kind::kRange: return fmt::format("[{}, {}]", a, b);
      case Kind::kReport: return "-";
    }
    return "-";
  }

  std::string status() const {
    switch (kind) {
      case Kind::kAbsolute: return std::fabs(computed - reference) <= a ? "PASS" : "FAIL";
      case Kind::kAtLeast: return computed >= a ? "PASS" : "FAIL";
      case Kind::kAtMost: return computed < a ? "PASS" : "FAIL";
      case Kind::kRange: return (computed >= a && computed <= b) ? "PASS" : "FAIL";
      case Kind::kReport: return "REPORT";
    }
    return "REPORT";
  }
};

CommandOutput comparison_table(std::string command, const std::vector<Check>& checks) {
  CommandOutput out;
  out.command = std::move(command);
  out.data.columns = {"quantity", "computed", "reference", "tolerance", "status"};
  int failures = 0;
  for (const auto& c : checks) {
    out.data.add_row({c.quantity, c.computed, c.reference, c.tolerance(), c.status()});
    if (c.status() == "FAIL") ++failures;
  }
  out.summary.emplace_back("checks", static_cast<double>(checks.size()));
  out.summary.emplace_back("failures", static_cast<double>(failures));
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long k = 0; k <= n; ++k) grid.push_back(lo + static_cast<double>(k) * step);
  return grid;
}

ReproduceReport fig2_report() {
  const auto& preset = experiment_preset();
  const double sigma = calibrated_sigma();
  const auto delays = uniform_grid(-150.0, 150.0, 1.0);

  Dataset curves;
  curves.columns = {"delay_ps"};
  for (const auto& t : preset.theory) curves.columns.push_back(fmt::format("delta_{}ghz", t.detuning_ghz));
  std::vector<DipCurve> dips;
  for (const auto& t : preset.theory) {
    dips.push_back(dip_curve(HomParams{sigma, sigma, t.detuning_ghz, {}}, delays, false));
  }
  for (std::size_t k = 0; k < delays.size(); ++k) {
    std::vector<Cell> row{delays[k]};
    for (const auto& d : dips) row.emplace_back(d.samples[k].coincidence);
    curves.add_row(std::move(row));
  }

  std::vector<Check> checks;
  checks.push_back({"calibrated_sigma_ghz", sigma, 8.01, Check::Kind::kAbsolute, 0.02});
  for (const auto& t : preset.theory) {
    const double v = visibility(HomParams{sigma, sigma, t.detuning_ghz, {}});
    const std::string name = fmt::format("visibility_delta_{}ghz", t.detuning_ghz);
    if (t.visibility == 0.0) {
      checks.push_back({name, v, 0.0, Check::Kind::kAtMost, 1e-4});
    } else {
      checks.push_back({name, v, t.visibility, Check::Kind::kAbsolute, 0.005});
    }
  }
  const auto log_v = [&](double d) { return -std::log(visibility(HomParams{sigma, sigma, d, {}})); };
  checks.push_back({"log_ratio_7_over_5", log_v(7.0) / log_v(5.0), 49.0 / 25.0,
                    Check::Kind::kAbsolute, 1e-9});
  checks.push_back({"log_ratio_9_over_5", log_v(9.0) / log_v(5.0), 81.0 / 25.0,
                    Check::Kind::kAbsolute, 1e-9});

  ReproduceReport report{comparison_table("reproduce fig2", checks), {}};
  report.datasets.push_back({"curves", std::move(curves)});
  return report;
}

ReproduceReport fig4_report() {
  const auto& preset = experiment_preset();
  const double sigma = calibrated_sigma();
  const double separation = preset.filter_separation_ghz();

  Dataset predictions;
  predictions.columns = {"rf_ghz",
                         "residual_detuning_ghz",
                         "predicted_visibility",
                         "predicted_noisy_visibility",
                         "measured_visibility",
                         "measured_uncertainty",
                         "deviation_in_uncertainties"};
  std::vector<Check> checks;
  const auto delays = uniform_grid(-150.0, 150.0, 2.0);
  Dataset curves;
  curves.columns = {"delay_ps"};
  std::vector<DipCurve> dips;
  for (const auto& m : preset.measured) {
    const double detuning = std::fabs(separation - m.rf_ghz);
    const HomParams p{sigma, sigma, detuning, preset.car};
    const double v = visibility(p);
    const double v_noisy = noisy_visibility(v, preset.car);
    predictions.add_row({m.rf_ghz, detuning, v, v_noisy, m.visibility, m.uncertainty,
                         (v_noisy - m.visibility) / m.uncertainty});
    checks.push_back({fmt::format("noisy_visibility_rf_{}ghz", m.rf_ghz), v_noisy, m.visibility,
                      Check::Kind::kReport});
    curves.columns.push_back(fmt::format("rf_{}ghz", m.rf_ghz));
    dips.push_back(dip_curve(p, delays, true));
  }
  for (std::size_t k = 0; k < delays.size(); ++k) {
    std::vector<Cell> row{delays[k]};
    for (const auto& d : dips) row.emplace_back(d.samples[k].coincidence);
    curves.add_row(std::move(row));
  }

  ReproduceReport report{comparison_table("reproduce fig4", checks), {}};
  report.summary.warnings.push_back(
      "predictions model reduced-RF runs as residual detuning |filter separation - f_RF| only; "
      "agreement with the measured values is not asserted");
  report.datasets.push_back({"predictions", std::move(predictions)});
  report.datasets.push_back({"curves", std::move(curves)});
  return report;
}

ReproduceReport efficiency_report() {
  const auto& preset = experiment_preset();
  const auto spectrum_at = [&](double m) {
    return ossb_compose(ModulatorConfig(m, preset.rf_ghz, paper_bias_preset()));
  };
  const auto best = maximize_conversion(-1, 0.5, 3.0, 1e-6);
  const double m_star = best.point.front();
  const auto peak = spectrum_at(1.8412);
  const auto at_180 = spectrum_at(1.80);
  const auto reduced = spectrum_at(preset.reduced_drive_m);
  const double m_measured = modulation_index(preset.rf_amplitude_v, preset.v_pi);

  std::vector<Check> checks{
      {"optimal_m", m_star, preset.optimal_m, Check::Kind::kAbsolute, 0.01},
      {"efficiency_order_-1_m_1.8412", peak.power(-1), preset.peak_efficiency,
       Check::Kind::kAbsolute, 0.0007},
      {"efficiency_order_3_m_1.8412", peak.power(3), preset.third_order_efficiency,
       Check::Kind::kAbsolute, 0.0005},
      {"efficiency_order_-1_m_1.80", at_180.power(-1), preset.peak_efficiency,
       Check::Kind::kAbsolute, 0.0007},
      {"efficiency_order_3_m_1.80", at_180.power(3), preset.third_order_efficiency,
       Check::Kind::kAbsolute, 0.0005},
      {"conversion_db_m_0.54_theory", 10.0 * std::log10(reduced.power(-1)), -11.8,
       Check::Kind::kAbsolute, 0.2},
      {"conversion_db_m_0.54_vs_measured", 10.0 * std::log10(reduced.power(-1)),
       preset.measured_conversion_db, Check::Kind::kAbsolute, 0.5},
      {"suppression_db_m_0.54", suppression_ratio_db(reduced, -1), preset.suppression_floor_db,
       Check::Kind::kAtLeast, preset.suppression_floor_db},
      {"modulation_index_0.46v", m_measured, preset.reduced_drive_m, Check::Kind::kAbsolute, 0.01},
      {"drive_voltage_m_1.8412", drive_voltage(1.8412, preset.v_pi), preset.required_voltage_v,
       Check::Kind::kRange, 1.57, 1.65},
  };

  Dataset scan;
  scan.columns = {"m", "efficiency_order_-1", "efficiency_order_3", "suppression_db"};
  for (double m : uniform_grid(0.02, 3.0, 0.02)) {
    const auto s = spectrum_at(m);
    scan.add_row({m, s.power(-1), s.power(3), suppression_ratio_db(s, -1)});
  }

  ReproduceReport report{comparison_table("reproduce efficiency", checks), {}};
  report.datasets.push_back({"scan", std::move(scan)});
  return report;
}

ReproduceReport budget_report() {
  const auto& preset = experiment_preset();
  const double sigma = calibrated_sigma();
  const double noise = noisy_visibility(1.0, preset.car);
  const double mis_raw =
      misalignment_penalty(preset.misalignment_ghz, preset.filter_fwhm_ghz, preset.filter_fwhm_ghz);
  const double mis_cal = misalignment_penalty(preset.misalignment_ghz, sigma, sigma);

  const double c = filter_sigma_constant(sigma, preset.filter_fwhm_ghz);
  const double residual = residual_sideband_penalty(
      preset.reduced_drive_m, preset.rf_ghz,
      from_filter(preset.signal_center_ghz, preset.filter_fwhm_ghz, c),
      from_filter(preset.idler_center_ghz, preset.filter_fwhm_ghz, c));

  using K = BudgetFactor::Kind;
  const std::vector<BudgetFactor> stated{{"noise", kStatedNoisePenalty, K::kPenalty},
                                         {"misalignment", preset.misalignment_penalty, K::kPenalty},
                                         {"loss", preset.loss_penalty, K::kPenalty}};
  const std::vector<BudgetFactor> modeled{{"noise", noise, K::kFactor},
                                          {"misalignment", mis_raw, K::kPenalty},
                                          {"loss", preset.loss_penalty, K::kPenalty},
                                          {"residual_sidebands", residual, K::kPenalty}};

  std::vector<Check> checks{
      {"noise_limited_visibility_car_70", noise, preset.noise_limited_visibility,
       Check::Kind::kAbsolute, 0.003},
      {"misalignment_penalty_2ghz_sigma_10", mis_raw, preset.misalignment_penalty,
       Check::Kind::kAbsolute, 0.002},
      {"misalignment_penalty_2ghz_sigma_calibrated", mis_cal, preset.misalignment_penalty,
       Check::Kind::kReport},
      {"loss_retained", 1.0 - preset.loss_penalty, 0.996, Check::Kind::kAbsolute, 1e-12},
      {"residual_sideband_penalty", residual, 0.0, Check::Kind::kAtMost, 0.01},
      {"combined_stated_components", visibility_budget(stated), preset.expected_visibility,
       Check::Kind::kAbsolute, 0.01},
      {"combined_modeled_components", visibility_budget(modeled), preset.expected_visibility,
       Check::Kind::kReport},
  };

  Dataset factors;
  factors.columns = {"budget", "label", "retained_fraction"};
  for (const auto& f : stated) factors.add_row({std::string("stated"), f.label, f.retained()});
  for (const auto& f : modeled) factors.add_row({std::string("modeled"), f.label, f.retained()});

  ReproduceReport report{comparison_table("reproduce budget", checks), {}};
  report.datasets.push_back({"factors", std::move(factors)});
  return report;
}

std::string file_extension(Format f) { return f == Format::kCsv ? ".csv" : ".json"; }

}  // namespace

std::vector<double> parse_delays(std::string_view text) {
  std::vector<double> delays;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
      const auto colon = text.find(':', start);
      parts.push_back(parse_double(text.substr(start, colon - start), "delay range"));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
      throw UsageError(fmt::format("delay range '{}' must be lo:hi:step with lo <= hi, step > 0", text));
    }
    delays = uniform_grid(parts[0], parts[1], parts[2]);
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto comma = text.find(',', start);
      delays.push_back(parse_double(text.substr(start, comma - start), "delay"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  if (delays.size() < 5) throw UsageError("at least 5 delays are required");
  return delays;
}

void override_key(nlohmann::json& config, std::string_view key, const std::optional<double>& value) {
  if (value) config[std::string(key)] = *value;
}

CommandOutput run_spectrum(const SpectrumOptions& options) {
  const ModulatorConfig& config = options.config;
  const int n_max = options.n_max.value_or(default_truncation(config.m()));
  const SidebandSpectrum spectrum = [&] {
    try {
      return ossb_compose(config, n_max);
    } catch (const std::exception& e) {
      throw UsageError(fmt::format("cannot compose spectrum: {}", e.what()));
    }
  }();
  if (!spectrum.contains(options.target_order)) {
    throw UsageError(fmt::format("target order {} outside truncation {}", options.target_order, n_max));
  }

  CommandOutput out;
  out.command = "spectrum";
  out.data.columns = {"order", "frequency_offset_ghz", "power_linear", "power_db", "amplitude_re",
                      "amplitude_im"};
  for (int n = -n_max; n <= n_max; ++n) {
    const auto a = spectrum.amplitude(n);
    const double p = std::norm(a);
    if (p < kNegligiblePower) continue;
    out.data.add_row({static_cast<double>(n), n * config.f_m(), p, 10.0 * std::log10(p), a.real(),
                      a.imag()});
  }

  out.summary.emplace_back("m", config.m());
  out.summary.emplace_back("f_m", config.f_m());
  out.summary.emplace_back("n_max", static_cast<double>(n_max));
  out.summary.emplace_back("target_order", static_cast<double>(options.target_order));
  out.summary.emplace_back("total_power", spectrum.total_power());
  out.summary.emplace_back("efficiency", spectrum.power(options.target_order));
  if (spectrum.power(options.target_order) >= kNegligiblePower) {
    out.summary.emplace_back("suppression_db", suppression_ratio_db(spectrum, options.target_order));
  } else {
    out.summary.emplace_back("suppression_db", kNan);
    out.warnings.push_back(fmt::format("target order {} is nulled", options.target_order));
  }
  if (out.data.rows.empty()) out.warnings.push_back("every sideband is nulled; spectrum is empty");
  if (config.exceeds_bandwidth_hint()) {
    out.warnings.push_back(fmt::format("f_m = {} GHz exceeds the ~{} GHz phase modulator bandwidth",
                                       config.f_m(), ModulatorConfig::kBandwidthHintGhz));
  }
  return out;
}

CommandOutput run_hom(const HomOptions& options) {
  const HomParams& p = options.params;
  CommandOutput out;
  out.command = "hom";
  out.data.columns = {"delay_ps", "coincidence_rate", "normalized_coincidence"};
  auto delays = options.delays;
  std::sort(delays.begin(), delays.end());
  for (double d : delays) {
    const double rc = coincidence_rate(d, p);
    out.data.add_row({d, rc, 2.0 * rc});
  }
  const double v = visibility(p);
  out.summary.emplace_back("visibility", v);
  out.summary.emplace_back("dip_width_ps", dip_width_ps(p));
  if (p.car) out.summary.emplace_back("noisy_visibility", noisy_visibility(v, *p.car));
  return out;
}

CommandOutput run_dip(const DipOptions& options) {
  DipCurve curve = [&] {
    try {
      return dip_curve(options.params, options.delays, options.noise);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  const DipFit fit = fit_visibility(curve);

  CommandOutput out;
  out.command = "dip";
  out.data.columns = {"delay_ps", "normalized_coincidence", "fitted"};
  for (const auto& s : curve.samples) {
    const double u = fit.width_ps > 0.0 ? (s.delay_ps - fit.center_ps) / fit.width_ps : 0.0;
    const double model = fit.ok ? 1.0 - fit.visibility * std::exp(-0.5 * u * u) : kNan;
    out.data.add_row({s.delay_ps, s.coincidence, model});
  }
  const double v = visibility(options.params);
  out.summary.emplace_back("visibility", v);
  if (options.noise) out.summary.emplace_back("noisy_visibility", noisy_visibility(v, *options.params.car));
  out.summary.emplace_back("fit_ok", fit.ok);
  out.summary.emplace_back("fit_visibility", fit.visibility);
  out.summary.emplace_back("fit_center_ps", fit.center_ps);
  out.summary.emplace_back("fit_width_ps", fit.width_ps);
  out.summary.emplace_back("fit_rms_residual", fit.rms_residual);
  out.summary.emplace_back("fit_iterations", static_cast<double>(fit.iterations));
  if (!fit.ok) out.warnings.push_back("fit failed: " + fit.diagnostic);
  return out;
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "m") return SweepAxis::kM;
  if (name == "delta") return SweepAxis::kDelta;
  if (name == "f_m") return SweepAxis::kFm;
  if (name == "car") return SweepAxis::kCar;
  throw UsageError(fmt::format("unknown sweep axis '{}' (expected m, delta, f_m, car)", name));
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kM: return "m";
    case SweepAxis::kDelta: return "delta";
    case SweepAxis::kFm: return "f_m";
    case SweepAxis::kCar: return "car";
  }
  return "?";
}

CommandOutput run_sweep(const SweepOptions& o) {
  if (o.steps < 2) throw UsageError("sweep needs at least 2 steps");
  if (!(o.from < o.to) || !std::isfinite(o.from) || !std::isfinite(o.to)) {
    throw UsageError(fmt::format("empty sweep range [{}, {}]", o.from, o.to));
  }
  if (o.outputs.empty()) throw UsageError("sweep needs at least one output");
  for (const auto& name : o.outputs) {
    if (name != "efficiency" && name != "suppression" && name != "visibility" &&
        name != "noisy_visibility") {
      throw UsageError(fmt::format("unknown sweep output '{}'", name));
    }
  }
  if (o.threads < 1) throw UsageError("threads must be >= 1");

  const double sigma = o.sigma > 0.0 ? o.sigma : calibrated_sigma();
  const double separation = experiment_preset().filter_separation_ghz();

  const auto evaluate = [&](double x) {
    double m = o.m, f_m = o.f_m, delta = o.delta, car = o.car;
    switch (o.axis) {
      case SweepAxis::kM: m = x; break;
      case SweepAxis::kDelta: delta = x; break;
      case SweepAxis::kFm: f_m = x; delta = std::fabs(separation - x); break;
      case SweepAxis::kCar: car = x; break;
    }
    std::vector<Cell> row{x};
    std::optional<SidebandSpectrum> spectrum;
    const auto sidebands = [&]() -> const SidebandSpectrum& {
      if (!spectrum) spectrum = ossb_compose(ModulatorConfig(m, f_m, paper_bias_preset()));
      return *spectrum;
    };
    for (const auto& name : o.outputs) {
      if (name == "efficiency") {
        row.emplace_back(conversion_efficiency(sidebands(), o.order));
      } else if (name == "suppression") {
        const auto& s = sidebands();
        row.emplace_back(s.power(o.order) >= kNegligiblePower ? suppression_ratio_db(s, o.order) : kNan);
      } else if (name == "visibility") {
        row.emplace_back(visibility(HomParams{sigma, sigma, delta, {}}));
      } else {
        row.emplace_back(noisy_visibility(visibility(HomParams{sigma, sigma, delta, {}}), car));
      }
    }
    return row;
  };

  const auto count = static_cast<std::size_t>(o.steps);
  std::vector<std::vector<Cell>> rows(count);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(o.threads));
  const auto point = [&](std::size_t k) {
    return k + 1 == count ? o.to : o.from + (o.to - o.from) * static_cast<double>(k) / static_cast<double>(count - 1);
  };
  {
    std::vector<std::jthread> workers;
    for (int t = 0; t < o.threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t k = static_cast<std::size_t>(t); k < count; k += static_cast<std::size_t>(o.threads)) {
            rows[k] = evaluate(point(k));
          }
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (!e) continue;
    try {
      std::rethrow_exception(e);
    } catch (const std::logic_error& err) {
      throw UsageError(fmt::format("sweep point invalid: {}", err.what()));
    }
  }

  CommandOutput out;
  out.command = "sweep";
  out.data.columns = {std::string(to_string(o.axis))};
  for (const auto& name : o.outputs) out.data.columns.push_back(name);
  for (auto& row : rows) out.data.add_row(std::move(row));
  out.summary.emplace_back("axis", std::string(to_string(o.axis)));
  out.summary.emplace_back("steps", static_cast<double>(o.steps));
  out.summary.emplace_back("sigma", sigma);
  return out;
}

CommandOutput run_optimize_conversion(const ConversionSearchOptions& options) {
  OptimizationResult r;
  try {
    r = maximize_conversion(options.order, options.lo, options.hi, options.tol);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  CommandOutput out;
  out.command = "optimize";
  out.data.columns = {"m", "efficiency"};
  out.data.add_row({r.point.front(), r.value});
  out.summary.emplace_back("objective", std::string("conversion"));
  out.summary.emplace_back("order", static_cast<double>(options.order));
  out.summary.emplace_back("m", r.point.front());
  out.summary.emplace_back("efficiency", r.value);
  out.summary.emplace_back("iterations", static_cast<double>(r.iterations));
  out.summary.emplace_back("converged", r.converged);
  out.summary.emplace_back("at_boundary", r.at_boundary);
  out.summary.emplace_back("bracket_width", r.tolerance_achieved);
  if (!r.diagnostic.empty()) out.warnings.push_back(r.diagnostic);
  return out;
}

CommandOutput run_optimize_trim(const TrimOptions& options) {
  const double before = options.objective.evaluate(options.config);
  const TrimResult r = trim_biases(options.config, options.objective, options.tol, options.max_iter);

  CommandOutput out;
  out.command = "optimize";
  out.data.columns = {"branch", "alpha", "theta"};
  for (std::size_t k = 0; k < 4; ++k) {
    out.data.add_row({static_cast<double>(k + 1), r.config.biases()[k].alpha, r.config.biases()[k].theta});
  }
  out.summary.emplace_back("objective", std::string(options.objective.kind == TrimObjective::Kind::kSuppression
                                                        ? "suppression"
                                                        : "efficiency"));
  out.summary.emplace_back("order", static_cast<double>(options.objective.order));
  out.summary.emplace_back("value_before", before);
  out.summary.emplace_back("value_after", r.result.value);
  out.summary.emplace_back("sweeps", static_cast<double>(r.result.iterations));
  out.summary.emplace_back("converged", r.result.converged);
  if (!r.result.diagnostic.empty()) out.warnings.push_back(r.result.diagnostic);
  return out;
}

ReproduceTarget parse_reproduce_target(std::string_view name) {
  if (name == "fig2") return ReproduceTarget::kFig2;
  if (name == "fig4") return ReproduceTarget::kFig4;
  if (name == "efficiency") return ReproduceTarget::kEfficiency;
  if (name == "budget") return ReproduceTarget::kBudget;
  throw UsageError(fmt::format("unknown reproduce target '{}' (expected fig2, fig4, efficiency, budget)", name));
}

std::string_view to_string(ReproduceTarget target) {
  switch (target) {
    case ReproduceTarget::kFig2: return "fig2";
    case ReproduceTarget::kFig4: return "fig4";
    case ReproduceTarget::kEfficiency: return "efficiency";
    case ReproduceTarget::kBudget: return "budget";
  }
  return "?";
}

ReproduceReport build_report(ReproduceTarget target) {
  ReproduceReport report;
  switch (target) {
    case ReproduceTarget::kFig2: report = fig2_report(); break;
    case ReproduceTarget::kFig4: report = fig4_report(); break;
    case ReproduceTarget::kEfficiency: report = efficiency_report(); break;
    case ReproduceTarget::kBudget: report = budget_report(); break;
  }
  report.summary.summary.emplace_back("preset_version", std::string(experiment_preset().version));
  return report;
}

std::vector<std::filesystem::path> write_report(const ReproduceReport& report,
                                                const std::filesystem::path& dir, Format format) {
  const std::string prefix = report.summary.command.substr(report.summary.command.find(' ') + 1);
  std::vector<std::filesystem::path> written;
  const auto summary_path = dir / (prefix + "_summary" + file_extension(format));
  write_file(summary_path, render(report.summary, format));
  written.push_back(summary_path);
  for (const auto& d : report.datasets) {
    const auto path = dir / (prefix + "_" + d.name + file_extension(format));
    std::string text;
    if (format == Format::kCsv) {
      std::ostringstream os;
      write_csv(os, d.data);
      text = os.str();
    } else {
      text = to_json(d.data).dump(2) + "\n";
    }
    write_file(path, text);
    written.push_back(path);
  }
  return written;
}

std::string render(const CommandOutput& output, Format format) {
  if (format == Format::kJson) return to_json(output).dump(2) + "\n";
  std::ostringstream os;
  write_csv(os, output.data);
  return os.str();
}

}  // namespace ossb::cli
