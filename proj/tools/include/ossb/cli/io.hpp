#pragma once

#include <array>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ossb/hom.hpp"
#include "ossb/sideband.hpp"

namespace ossb::cli {

/// Bad flags or configuration; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failure; maps to exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

// Configuration files are flat JSON objects whose keys are the field names of
// the domain types: m, f_m, biases ([[alpha, theta] x 4]), insertion_loss_db
// for the modulator and sigma_s, sigma_i, delta, car for the interference
// parameters. Unknown keys are rejected.

inline constexpr std::array<std::string_view, 4> kModulatorKeys = {"m", "f_m", "biases",
                                                                  "insertion_loss_db"};
inline constexpr std::array<std::string_view, 4> kHomKeys = {"sigma_s", "sigma_i", "delta", "car"};

using KeySet = std::span<const std::string_view>;

/// Reads a JSON object from disk. Missing or unreadable file: IoError;
/// malformed JSON or a non-object document: UsageError.
nlohmann::json load_config(const std::filesystem::path& path);

/// Throws UsageError naming the first key not in `allowed`.
void reject_unknown_keys(const nlohmann::json& config,
                         std::initializer_list<KeySet> allowed);

/// m and f_m are required; biases default to the sideband-selecting preset
/// and insertion_loss_db to 0. Throws UsageError naming the offending key.
ModulatorConfig modulator_from_json(const nlohmann::json& config);
nlohmann::json to_json(const ModulatorConfig& config);

/// sigma_s, sigma_i and delta are required; car is optional.
HomParams hom_params_from_json(const nlohmann::json& config);
nlohmann::json to_json(const HomParams& params);

/// Full-precision decimal (17 significant digits); "inf", "-inf", "nan" for
/// non-finite values.
std::string format_number(double value);

using Cell = std::variant<double, std::string>;

/// A table with a header row. Rows are emitted in insertion order.
struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

using SummaryValue = std::variant<double, bool, std::string>;

/// Everything a subcommand produces.
struct CommandOutput {
  std::string command;
  Dataset data;
  std::vector<std::pair<std::string, SummaryValue>> summary;
  std::vector<std::string> warnings;

  const SummaryValue* find(std::string_view key) const;
};

/// Header row plus one line per row, comma separated, newline terminated.
void write_csv(std::ostream& out, const Dataset& data);
nlohmann::json to_json(const Dataset& data);
nlohmann::json to_json(const CommandOutput& output);

/// Writes `text` to `path`, creating parent directories. Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace ossb::cli
