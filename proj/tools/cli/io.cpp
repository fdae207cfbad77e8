#include "ossb/cli/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace ossb::cli {
namespace {

double number_field(const nlohmann::json& config, std::string_view key) {
  const auto it = config.find(std::string(key));
  if (it == config.end()) throw UsageError(fmt::format("missing required key '{}'", key));
  if (!it->is_number()) throw UsageError(fmt::format("key '{}' must be a number", key));
  return it->get<double>();
}

template <typename Build>
auto build_or_usage(std::string_view what, Build&& build) {
  try {
    return build();
  } catch (const std::invalid_argument& e) {
    throw UsageError(fmt::format("invalid {}: {}", what, e.what()));
  } catch (const std::domain_error& e) {
    throw UsageError(fmt::format("invalid {}: {}", what, e.what()));
  }
}

nlohmann::json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

nlohmann::json cell_to_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return number_to_json(*d);
  return std::get<std::string>(c);
}

std::string csv_field(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

}  // namespace

nlohmann::json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot read config '{}'", path.string()));
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(fmt::format("malformed JSON in '{}': {}", path.string(), e.what()));
  }
  if (!doc.is_object()) {
    throw UsageError(fmt::format("config '{}' must be a JSON object", path.string()));
  }
  return doc;
}

void reject_unknown_keys(const nlohmann::json& config,
                         std::initializer_list<KeySet> allowed) {
  for (const auto& item : config.items()) {
    bool known = false;
    for (const auto& group : allowed) {
      for (std::string_view key : group) known = known || key == item.key();
    }
    if (!known) throw UsageError(fmt::format("unknown config key '{}'", item.key()));
  }
}

ModulatorConfig modulator_from_json(const nlohmann::json& config) {
  reject_unknown_keys(config, {kModulatorKeys});
  const double m = number_field(config, "m");
  const double f_m = number_field(config, "f_m");
  const double loss =
      config.contains("insertion_loss_db") ? number_field(config, "insertion_loss_db") : 0.0;

  BiasSet biases = paper_bias_preset();
  if (const auto it = config.find("biases"); it != config.end()) {
    if (!it->is_array() || it->size() != 4) {
      throw UsageError("key 'biases' must be an array of four [alpha, theta] pairs");
    }
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& pair = (*it)[k];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw UsageError(fmt::format("key 'biases' entry {} must be [alpha, theta]", k));
      }
      biases[k] = Bias{pair[0].get<double>(), pair[1].get<double>()};
    }
  }
  return build_or_usage("modulator config",
                        [&] { return ModulatorConfig(m, f_m, biases, loss); });
}

nlohmann::json to_json(const ModulatorConfig& config) {
  nlohmann::json biases = nlohmann::json::array();
  for (const auto& b : config.biases()) biases.push_back({b.alpha, b.theta});
  return {{"m", config.m()},
          {"f_m", config.f_m()},
          {"biases", biases},
          {"insertion_loss_db", config.insertion_loss_db()}};
}

HomParams hom_params_from_json(const nlohmann::json& config) {
  reject_unknown_keys(config, {kHomKeys});
  HomParams p;
  p.sigma_s = number_field(config, "sigma_s");
  p.sigma_i = number_field(config, "sigma_i");
  p.delta = number_field(config, "delta");
  if (config.contains("car")) p.car = number_field(config, "car");
  build_or_usage("interference parameters", [&] {
    p.validate();
    return 0;
  });
  return p;
}

nlohmann::json to_json(const HomParams& params) {
  nlohmann::json j = {
      {"sigma_s", params.sigma_s}, {"sigma_i", params.sigma_i}, {"delta", params.delta}};
  if (params.car) j["car"] = *params.car;
  return j;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", value);
}

void Dataset::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("Dataset::add_row: row width does not match header");
  }
  rows.push_back(std::move(row));
}

const SummaryValue* CommandOutput::find(std::string_view key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return &v;
  }
  return nullptr;
}

void write_csv(std::ostream& out, const Dataset& data) {
  for (std::size_t c = 0; c < data.columns.size(); ++c) {
    out << (c ? "," : "") << csv_field(data.columns[c]);
  }
  out << '\n';
  for (const auto& row : data.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_field(row[c]);
    out << '\n';
  }
}

nlohmann::json to_json(const Dataset& data) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : data.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& cell : row) r.push_back(cell_to_json(cell));
    rows.push_back(std::move(r));
  }
  return {{"columns", data.columns}, {"rows", std::move(rows)}};
}

nlohmann::json to_json(const CommandOutput& output) {
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [key, value] : output.summary) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            summary[key] = number_to_json(v);
          } else {
            summary[key] = v;
          }
        },
        value);
  }
  return {{"command", output.command},
          {"summary", std::move(summary)},
          {"warnings", output.warnings},
          {"data", to_json(output.data)}};
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError(fmt::format("cannot create directory '{}': {}", path.parent_path().string(),
                                ec.message()));
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << text;
  out.flush();
  if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

}  // namespace ossb::cli
