#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ossb/cli/io.hpp"
#include "ossb/hom.hpp"
#include "ossb/optimize.hpp"
#include "ossb/sideband.hpp"

namespace ossb::cli {

/// "lo:hi:step" (inclusive range) or a comma-separated list of delays in ps.
std::vector<double> parse_delays(std::string_view text);

/// Sets config[key] = *value when a flag was given.
void override_key(nlohmann::json& config, std::string_view key, const std::optional<double>& value);

struct SpectrumOptions {
  ModulatorConfig config;
  std::optional<int> n_max;
  int target_order = -1;
};

/// Sideband table: order, frequency offset, linear and dB power, complex
/// amplitude. Nulled orders (power < 1e-30) are omitted.
CommandOutput run_spectrum(const SpectrumOptions& options);

struct HomOptions {
  HomParams params;
  std::vector<double> delays;
};

/// Closed-form coincidence rate at each delay plus the visibility summary.
CommandOutput run_hom(const HomOptions& options);

struct DipOptions {
  HomParams params;
  std::vector<double> delays;
  bool noise = false;
};

/// Normalized dip samples and the fitted Gaussian dip.
CommandOutput run_dip(const DipOptions& options);

enum class SweepAxis { kM, kDelta, kFm, kCar };

SweepAxis parse_sweep_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);

struct SweepOptions {
  SweepAxis axis = SweepAxis::kM;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  /// Any of: efficiency, suppression, visibility, noisy_visibility.
  std::vector<std::string> outputs;

  // Values for the quantities that are not swept.
  double m = 0.54;
  double f_m = 25.0;
  double sigma = 0.0;  // <= 0 selects the calibrated width
  double delta = 0.0;
  double car = 70.0;
  int order = -1;

  int threads = 1;
};

/// One row per grid point in axis order, independent of `threads`. For the
/// f_m axis the detuning is |filter separation - f_m|.
CommandOutput run_sweep(const SweepOptions& options);

struct ConversionSearchOptions {
  int order = -1;
  double lo = 0.5;
  double hi = 3.0;
  double tol = 1e-6;
};

CommandOutput run_optimize_conversion(const ConversionSearchOptions& options);

struct TrimOptions {
  ModulatorConfig config;
  TrimObjective objective;
  double tol = 1e-6;
  int max_iter = 100;
};

CommandOutput run_optimize_trim(const TrimOptions& options);

enum class ReproduceTarget { kFig2, kFig4, kEfficiency, kBudget };

/// Throws UsageError for unknown names.
ReproduceTarget parse_reproduce_target(std::string_view name);
std::string_view to_string(ReproduceTarget target);

struct NamedDataset {
  std::string name;
  Dataset data;
};

/// Comparison table (quantity, computed, reference, tolerance, status) plus
/// the datasets behind it.
struct ReproduceReport {
  CommandOutput summary;
  std::vector<NamedDataset> datasets;
};

ReproduceReport build_report(ReproduceTarget target);

enum class Format { kCsv, kJson };

/// Writes <dir>/<target>_summary and <dir>/<target>_<dataset> files. Returns
/// the paths written. Throws IoError.
std::vector<std::filesystem::path> write_report(const ReproduceReport& report,
                                                const std::filesystem::path& dir, Format format);

/// Serializes an output for stdout or --out.
std::string render(const CommandOutput& output, Format format);

}  // namespace ossb::cli
