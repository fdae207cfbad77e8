#include <cstdio>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ossb/cli/commands.hpp"
#include "ossb/cli/io.hpp"

namespace cli = ossb::cli;

namespace {

struct Common {
  std::string config_path;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* sub, Common& c, bool out_is_dir = false) {
  sub->add_option("--config", c.config_path, "JSON configuration file");
  sub->add_option("--out", c.out, out_is_dir ? "Output directory" : "Output file (default stdout)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

cli::Format format_of(const Common& c) {
  return c.format == "json" ? cli::Format::kJson : cli::Format::kCsv;
}

nlohmann::json base_config(const Common& c) {
  return c.config_path.empty() ? nlohmann::json::object() : cli::load_config(c.config_path);
}

std::string summary_text(const cli::SummaryValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return cli::format_number(*d);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<std::string>(v);
}

void emit(const cli::CommandOutput& output, const Common& c) {
  for (const auto& w : output.warnings) fmt::print(stderr, "warning: {}\n", w);
  const auto format = format_of(c);
  const std::string text = cli::render(output, format);
  if (c.out.empty()) {
    std::cout << text;
  } else {
    cli::write_file(c.out, text);
  }
  if (format == cli::Format::kCsv) {
    for (const auto& [key, value] : output.summary) {
      fmt::print(stderr, "# {} = {}\n", key, summary_text(value));
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-sideband frequency shifter and two-photon interference simulator", "ossb"};
  app.require_subcommand(1);

  // Modulator flags.
  std::optional<double> m, f_m, insertion_loss_db;
  // Interference flags.
  std::optional<double> sigma_s, sigma_i, delta, car;

  Common spectrum_common;
  std::optional<int> n_max;
  int target_order = -1;
  auto* spectrum = app.add_subcommand("spectrum", "Sideband spectrum of the modulator");
  add_common(spectrum, spectrum_common);
  spectrum->add_option("--m", m, "Modulation index");
  spectrum->add_option("--f_m", f_m, "RF frequency in GHz");
  spectrum->add_option("--insertion_loss_db", insertion_loss_db, "Insertion loss in dB");
  spectrum->add_option("--n_max", n_max, "Truncation order (default ceil(m) + 20)");
  spectrum->add_option("--order", target_order, "Target sideband order");

  auto add_hom_flags = [&](CLI::App* sub) {
    sub->add_option("--sigma_s", sigma_s, "Signal spectral width in GHz");
    sub->add_option("--sigma_i", sigma_i, "Idler spectral width in GHz");
    sub->add_option("--delta", delta, "Center detuning in GHz");
    sub->add_option("--car", car, "Coincidence-to-accidental ratio");
  };

  Common hom_common;
  std::string delays_text = "-150:150:1";
  auto* hom = app.add_subcommand("hom", "Closed-form coincidence rate versus delay");
  add_common(hom, hom_common);
  add_hom_flags(hom);
  hom->add_option("--delays", delays_text, "lo:hi:step or a comma list, in ps");

  Common dip_common;
  bool noise = false;
  auto* dip = app.add_subcommand("dip", "Sampled dip and fitted visibility");
  add_common(dip, dip_common);
  add_hom_flags(dip);
  dip->add_option("--delays", delays_text, "lo:hi:step or a comma list, in ps");
  dip->add_flag("--noise", noise, "Scale the dip depth by the accidental floor (needs --car)");

  Common sweep_common;
  cli::SweepOptions sweep_opts;
  std::string axis = "m";
  std::string outputs = "efficiency";
  auto* sweep = app.add_subcommand("sweep", "Evaluate metrics over a parameter grid");
  add_common(sweep, sweep_common);
  sweep->add_option("--axis", axis, "m, delta, f_m or car")->required();
  sweep->add_option("--from", sweep_opts.from, "Range start")->required();
  sweep->add_option("--to", sweep_opts.to, "Range end")->required();
  sweep->add_option("--steps", sweep_opts.steps, "Number of grid points")->required();
  sweep->add_option("--outputs", outputs,
                    "Comma list of efficiency, suppression, visibility, noisy_visibility");
  sweep->add_option("--m", sweep_opts.m, "Modulation index when not swept");
  sweep->add_option("--f_m", sweep_opts.f_m, "RF frequency in GHz when not swept");
  sweep->add_option("--sigma", sweep_opts.sigma, "Spectral width in GHz (default calibrated)");
  sweep->add_option("--delta", sweep_opts.delta, "Detuning in GHz when not swept");
  sweep->add_option("--car", sweep_opts.car, "CAR when not swept");
  sweep->add_option("--order", sweep_opts.order, "Target sideband order");
  sweep->add_option("--threads", sweep_opts.threads, "Worker threads");

  Common optimize_common;
  std::string objective = "conversion";
  cli::ConversionSearchOptions search;
  double trim_tol = 1e-6;
  int trim_max_iter = 100;
  auto* optimize = app.add_subcommand("optimize", "Drive-level search or bias trimming");
  add_common(optimize, optimize_common);
  optimize->add_option("--objective", objective, "conversion, suppression or efficiency")
      ->check(CLI::IsMember({"conversion", "suppression", "efficiency"}));
  optimize->add_option("--order", search.order, "Target sideband order");
  optimize->add_option("--lo", search.lo, "Lower bound on m (conversion)");
  optimize->add_option("--hi", search.hi, "Upper bound on m (conversion)");
  optimize->add_option("--tol", trim_tol, "Tolerance");
  optimize->add_option("--max_iter", trim_max_iter, "Coordinate sweeps (trimming)");
  optimize->add_option("--m", m, "Modulation index (trimming)");
  optimize->add_option("--f_m", f_m, "RF frequency in GHz (trimming)");
  optimize->add_option("--insertion_loss_db", insertion_loss_db, "Insertion loss in dB (trimming)");

  Common reproduce_common;
  std::string target;
  auto* reproduce = app.add_subcommand("reproduce", "Regenerate a published result");
  add_common(reproduce, reproduce_common, true);
  reproduce->add_option("target", target, "fig2, fig4, efficiency or budget")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  try {
    if (spectrum->parsed()) {
      auto config = base_config(spectrum_common);
      cli::reject_unknown_keys(config, {cli::kModulatorKeys});
      cli::override_key(config, "m", m);
      cli::override_key(config, "f_m", f_m);
      cli::override_key(config, "insertion_loss_db", insertion_loss_db);
      emit(cli::run_spectrum({cli::modulator_from_json(config), n_max, target_order}), spectrum_common);
    } else if (hom->parsed() || dip->parsed()) {
      const Common& common = hom->parsed() ? hom_common : dip_common;
      auto config = base_config(common);
      cli::reject_unknown_keys(config, {cli::kHomKeys});
      cli::override_key(config, "sigma_s", sigma_s);
      cli::override_key(config, "sigma_i", sigma_i);
      cli::override_key(config, "delta", delta);
      cli::override_key(config, "car", car);
      const auto params = cli::hom_params_from_json(config);
      const auto delays = cli::parse_delays(delays_text);
      if (hom->parsed()) {
        emit(cli::run_hom({params, delays}), common);
      } else {
        if (noise && !params.car) throw cli::UsageError("--noise requires car");
        emit(cli::run_dip({params, delays, noise}), common);
      }
    } else if (sweep->parsed()) {
      if (!sweep_common.config_path.empty()) {
        throw cli::UsageError("sweep takes its parameters from flags only");
      }
      sweep_opts.axis = cli::parse_sweep_axis(axis);
      sweep_opts.outputs.clear();
      std::size_t start = 0;
      while (true) {
        const auto comma = outputs.find(',', start);
        sweep_opts.outputs.push_back(outputs.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      emit(cli::run_sweep(sweep_opts), sweep_common);
    } else if (optimize->parsed()) {
      if (objective == "conversion") {
        search.tol = trim_tol;
        emit(cli::run_optimize_conversion(search), optimize_common);
      } else {
        auto config = base_config(optimize_common);
        cli::reject_unknown_keys(config, {cli::kModulatorKeys});
        cli::override_key(config, "m", m);
        cli::override_key(config, "f_m", f_m);
        cli::override_key(config, "insertion_loss_db", insertion_loss_db);
        ossb::TrimObjective goal;
        goal.kind = objective == "suppression" ? ossb::TrimObjective::Kind::kSuppression
                                               : ossb::TrimObjective::Kind::kEfficiency;
        goal.order = search.order;
        emit(cli::run_optimize_trim({cli::modulator_from_json(config), goal, trim_tol, trim_max_iter}),
             optimize_common);
      }
    } else if (reproduce->parsed()) {
      if (!reproduce_common.config_path.empty()) {
        throw cli::UsageError("reproduce uses the built-in experiment preset; --config is not accepted");
      }
      const auto report = cli::build_report(cli::parse_reproduce_target(target));
      if (reproduce_common.out.empty()) {
        emit(report.summary, reproduce_common);
      } else {
        for (const auto& w : report.summary.warnings) fmt::print(stderr, "warning: {}\n", w);
        for (const auto& path : cli::write_report(report, reproduce_common.out, format_of(reproduce_common))) {
          fmt::print(stderr, "wrote {}\n", path.string());
        }
      }
    }
  } catch (const cli::IoError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return cli::kExitIo;
  } catch (const cli::UsageError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return cli::kExitUsage;
  } catch (const std::logic_error& e) {
    // Domain validation (invalid_argument, domain_error, out_of_range).
    fmt::print(stderr, "error: {}\n", e.what());
    return cli::kExitUsage;
  }
  return cli::kExitOk;
}
