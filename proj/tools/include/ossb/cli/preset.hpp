#pragma once

// Published constants of the reference frequency-shifting experiment. Every
// reported number the tools compare against lives here and nowhere else.

#include <array>
#include <string_view>

#include "ossb/sideband.hpp"

namespace ossb::cli {

struct MeasuredVisibility {
  double rf_ghz;
  double visibility;
  double uncertainty;
};

struct TheoryVisibility {
  double detuning_ghz;
  double visibility;
};

struct ExperimentPreset {
  std::string_view version;

  // Filters and source.
  double signal_center_ghz;
  double idler_center_ghz;
  double filter_fwhm_ghz;
  double car;

  // Modulator.
  double rf_ghz;
  double rf_amplitude_v;
  double reduced_drive_m;
  double v_pi;
  double insertion_loss_db;
  double suppression_floor_db;
  double peak_efficiency;
  double third_order_efficiency;
  double measured_conversion_db;
  double optimal_m;
  double required_voltage_v;

  // Interference.
  std::array<TheoryVisibility, 5> theory;
  std::array<MeasuredVisibility, 4> measured;

  // Visibility budget.
  double noise_limited_visibility;
  double loss_penalty;
  double misalignment_ghz;
  double misalignment_penalty;
  double expected_visibility;

  /// Modulator at the reduced experimental drive with the sideband-selecting
  /// biases and no insertion loss.
  ModulatorConfig modulator() const;
  /// Sum of the signal and idler filter offsets, i.e. the frequency shift
  /// that erases their detuning.
  double filter_separation_ghz() const { return idler_center_ghz - signal_center_ghz; }
};

const ExperimentPreset& experiment_preset();

}  // namespace ossb::cli
