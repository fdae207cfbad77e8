#include "ossb/cli/preset.hpp"

namespace ossb::cli {

ModulatorConfig ExperimentPreset::modulator() const {
  return ModulatorConfig(reduced_drive_m, rf_ghz, paper_bias_preset());
}

const ExperimentPreset& experiment_preset() {
  static const ExperimentPreset preset{
      .version = "ossb-hom-preset/1",
      .signal_center_ghz = -12.5,
      .idler_center_ghz = 12.5,
      .filter_fwhm_ghz = 10.0,
      .car = 70.0,
      .rf_ghz = 25.0,
      .rf_amplitude_v = 0.46,
      .reduced_drive_m = 0.54,
      .v_pi = 2.676,
      .insertion_loss_db = 17.6,
      .suppression_floor_db = 22.0,
      .peak_efficiency = 0.3381,
      .third_order_efficiency = 0.0098,
      .measured_conversion_db = -12.1,
      .optimal_m = 1.84,
      .required_voltage_v = 1.6,
      .theory = {{{0.0, 1.0}, {5.0, 0.677}, {7.0, 0.465}, {9.0, 0.282}, {25.0, 0.0}}},
      .measured = {{{25.0, 0.920, 0.059},
                    {20.0, 0.602, 0.042},
                    {18.0, 0.337, 0.028},
                    {16.0, 0.231, 0.038}}},
      .noise_limited_visibility = 0.97,
      .loss_penalty = 0.004,
      .misalignment_ghz = 2.0,
      .misalignment_penalty = 0.04,
      .expected_visibility = 0.93,
  };
  return preset;
}

}  // namespace ossb::cli
