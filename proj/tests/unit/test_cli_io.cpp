#include "ossb/cli/commands.hpp"
#include "ossb/cli/io.hpp"
#include "ossb/cli/preset.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ossb::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ossb_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> table;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    table.push_back(cells);
  }
  return table;
}

double summary_number(const CommandOutput& out, std::string_view key) {
  const auto* v = out.find(key);
  if (v == nullptr) throw std::runtime_error("missing summary key");
  return std::get<double>(*v);
}

double cell_number(const Cell& c) { return std::get<double>(c); }

// Config round trip.

TEST(Config, ModulatorRoundTripIsIdentity) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> m(0.0, 5.0), f(0.1, 99.0), angle(0.0, 6.28), loss(0.0, 30.0);
  for (int k = 0; k < 200; ++k) {
    BiasSet biases;
    for (auto& b : biases) b = Bias{angle(rng), angle(rng)};
    const ModulatorConfig original(m(rng), f(rng), biases, loss(rng));
    const nlohmann::json text = nlohmann::json::parse(to_json(original).dump());
    const ModulatorConfig parsed = modulator_from_json(text);
    EXPECT_EQ(parsed, original);
    EXPECT_EQ(to_json(parsed), to_json(original));
  }
}

TEST(Config, HomRoundTripIsIdentity) {
  const HomParams with_car{8.0, 9.5, 3.25, 70.0};
  const HomParams without_car{8.0, 9.5, 3.25, {}};
  for (const auto& p : {with_car, without_car}) {
    const auto parsed = hom_params_from_json(nlohmann::json::parse(to_json(p).dump()));
    EXPECT_EQ(parsed.sigma_s, p.sigma_s);
    EXPECT_EQ(parsed.sigma_i, p.sigma_i);
    EXPECT_EQ(parsed.delta, p.delta);
    EXPECT_EQ(parsed.car, p.car);
  }
}

TEST(Config, DefaultsToSidebandSelectingBiases) {
  const auto config = modulator_from_json(nlohmann::json{{"m", 0.54}, {"f_m", 25.0}});
  EXPECT_EQ(config.biases(), paper_bias_preset());
  EXPECT_EQ(config.insertion_loss_db(), 0.0);
}

TEST(Config, UnknownKeyIsRejectedByName) {
  try {
    modulator_from_json(nlohmann::json{{"m", 0.54}, {"f_m", 25.0}, {"fm", 25.0}});
    FAIL() << "expected UsageError";
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("'fm'"), std::string::npos) << e.what();
  }
}

TEST(Config, MalformedValuesNameTheKey) {
  try {
    hom_params_from_json(nlohmann::json{{"sigma_s", "wide"}, {"sigma_i", 8.0}, {"delta", 0.0}});
    FAIL() << "expected UsageError";
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("sigma_s"), std::string::npos) << e.what();
  }
  EXPECT_THROW(modulator_from_json(nlohmann::json{{"m", -1.0}, {"f_m", 25.0}}), UsageError);
  EXPECT_THROW(modulator_from_json(nlohmann::json{{"m", 1.0}, {"f_m", 25.0}, {"biases", {1, 2}}}),
               UsageError);
}

TEST(Config, LoadErrorsMapToExitClasses) {
  const auto dir = scratch_dir("load");
  EXPECT_THROW(load_config(dir / "missing.json"), IoError);
  std::ofstream(dir / "bad.json") << "{ not json";
  EXPECT_THROW(load_config(dir / "bad.json"), UsageError);
  std::ofstream(dir / "array.json") << "[1, 2]";
  EXPECT_THROW(load_config(dir / "array.json"), UsageError);
  std::ofstream(dir / "ok.json") << R"({"m": 0.54, "f_m": 25})";
  EXPECT_EQ(load_config(dir / "ok.json")["m"], 0.54);
}

// Number formatting and CSV.

TEST(Output, NumbersParseBackWithinTolerance) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-30, 30);
  for (int k = 0; k < 2000; ++k) {
    const double x = mantissa(rng) * std::pow(10.0, exponent(rng));
    const double back = std::stod(format_number(x));
    EXPECT_LE(std::fabs(back - x), 1e-9 * std::max(1.0, std::fabs(x)));
    EXPECT_EQ(back, x);  // 17 significant digits round-trip exactly
  }
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(Output, SpectrumCsvParsesBack) {
  const auto out = run_spectrum({ModulatorConfig(1.8412, 25.0, paper_bias_preset()), {}, -1});
  std::ostringstream os;
  write_csv(os, out.data);
  const std::string text = os.str();
  ASSERT_FALSE(text.empty());
  EXPECT_EQ(text.back(), '\n');
  const auto table = parse_csv(text);
  ASSERT_EQ(table.size(), out.data.rows.size() + 1);
  EXPECT_EQ(table[0], out.data.columns);
  for (std::size_t r = 0; r < out.data.rows.size(); ++r) {
    for (std::size_t c = 0; c < out.data.columns.size(); ++c) {
      const double internal = cell_number(out.data.rows[r][c]);
      EXPECT_NEAR(std::stod(table[r + 1][c]), internal, 1e-9);
    }
  }
}

TEST(Output, JsonKeepsNonFiniteAsStrings) {
  CommandOutput out;
  out.command = "x";
  out.data.columns = {"a"};
  out.data.add_row({std::numeric_limits<double>::infinity()});
  out.summary.emplace_back("v", std::nan(""));
  const auto j = nlohmann::json::parse(to_json(out).dump());
  EXPECT_EQ(j.dump().find("null"), std::string::npos);
}

TEST(Output, RowWidthMustMatchHeader) {
  Dataset d;
  d.columns = {"a", "b"};
  EXPECT_THROW(d.add_row({1.0}), std::logic_error);
}

TEST(Output, WriteFailureIsIoError) {
  const auto dir = scratch_dir("write");
  std::ofstream(dir / "file") << "x";
  EXPECT_THROW(write_file(dir / "file" / "nested.csv", "a\n"), IoError);
  write_file(dir / "deeper" / "ok.csv", "a\n");
  EXPECT_TRUE(fs::exists(dir / "deeper" / "ok.csv"));
}

// Commands.

TEST(Spectrum, ReducedDriveSuppressionAboveFloor) {
  const auto out = run_spectrum({experiment_preset().modulator(), {}, -1});
  EXPECT_GE(summary_number(out, "suppression_db"), 22.0);
  double dominant = 0.0;
  double dominant_order = 0.0;
  for (const auto& row : out.data.rows) {
    if (cell_number(row[2]) > dominant) {
      dominant = cell_number(row[2]);
      dominant_order = cell_number(row[0]);
    }
  }
  EXPECT_EQ(dominant_order, -1.0);
}

TEST(Spectrum, PeakDriveEfficiency) {
  const auto out = run_spectrum({ModulatorConfig(1.8412, 25.0, paper_bias_preset()), {}, -1});
  EXPECT_NEAR(summary_number(out, "efficiency"), 0.3386, 0.0007);
}

TEST(Spectrum, ZeroDriveIsEmptyWithWarning) {
  const auto out = run_spectrum({ModulatorConfig(0.0, 25.0, paper_bias_preset()), {}, -1});
  EXPECT_TRUE(out.data.rows.empty());
  EXPECT_FALSE(out.warnings.empty());
}

TEST(Spectrum, BandwidthWarning) {
  EXPECT_TRUE(run_spectrum({ModulatorConfig(0.5, 25.0, paper_bias_preset()), {}, -1}).warnings.empty());
  EXPECT_FALSE(run_spectrum({ModulatorConfig(0.5, 150.0, paper_bias_preset()), {}, -1}).warnings.empty());
}

TEST(Hom, Examples) {
  const double sigma = calibrate_sigma(0.677, 5.0);
  const auto delays = parse_delays("-100:100:10");
  EXPECT_NEAR(summary_number(run_hom({HomParams{sigma, sigma, 5.0, {}}, delays}), "visibility"), 0.677, 0.005);
  EXPECT_NEAR(summary_number(run_hom({HomParams{sigma, sigma, 0.0, {}}, delays}), "visibility"), 1.0, 1e-12);
  EXPECT_NEAR(summary_number(run_hom({HomParams{sigma, sigma, 0.0, 70.0}, delays}), "noisy_visibility"), 0.972,
              0.003);
}

TEST(Dip, FitMatchesClosedForm) {
  const auto out = run_dip({HomParams{8.0, 8.0, 5.0, 70.0}, parse_delays("-150:150:2"), true});
  EXPECT_TRUE(std::get<bool>(*out.find("fit_ok")));
  EXPECT_NEAR(summary_number(out, "fit_visibility"), summary_number(out, "noisy_visibility"), 1e-6);
}

TEST(Delays, Parsing) {
  EXPECT_EQ(parse_delays("-2:2:1"), (std::vector<double>{-2, -1, 0, 1, 2}));
  EXPECT_EQ(parse_delays("1, 2,3,4,5"), (std::vector<double>{1, 2, 3, 4, 5}));
  EXPECT_THROW(parse_delays("1:0:1"), UsageError);
  EXPECT_THROW(parse_delays("0:1:0"), UsageError);
  EXPECT_THROW(parse_delays("1,2,x,4,5"), UsageError);
  EXPECT_THROW(parse_delays("1,2,3"), UsageError);
}

TEST(Sweep, ConversionPeakOnGrid) {
  SweepOptions o;
  o.axis = SweepAxis::kM;
  o.from = 0.0;
  o.to = 3.0;
  o.steps = 301;
  o.outputs = {"efficiency"};
  const auto out = run_sweep(o);
  ASSERT_EQ(out.data.rows.size(), 301u);
  std::size_t best = 0;
  for (std::size_t k = 0; k < out.data.rows.size(); ++k) {
    if (cell_number(out.data.rows[k][1]) > cell_number(out.data.rows[best][1])) best = k;
  }
  EXPECT_GT(best, 0u);
  EXPECT_LT(best, 300u);
  EXPECT_NEAR(cell_number(out.data.rows[best][0]), 1.84, 0.01);
  int local_maxima = 0;
  for (std::size_t k = 1; k + 1 < out.data.rows.size(); ++k) {
    const double y = cell_number(out.data.rows[k][1]);
    if (y > cell_number(out.data.rows[k - 1][1]) && y > cell_number(out.data.rows[k + 1][1])) ++local_maxima;
  }
  EXPECT_EQ(local_maxima, 1);
}

TEST(Sweep, MonotoneColumns) {
  SweepOptions d;
  d.axis = SweepAxis::kDelta;
  d.from = 0.0;
  d.to = 25.0;
  d.steps = 51;
  d.outputs = {"visibility"};
  const auto by_delta = run_sweep(d);
  for (std::size_t k = 1; k < by_delta.data.rows.size(); ++k) {
    EXPECT_LT(cell_number(by_delta.data.rows[k][1]), cell_number(by_delta.data.rows[k - 1][1]));
  }

  SweepOptions c;
  c.axis = SweepAxis::kCar;
  c.from = 1.0;
  c.to = 1000.0;
  c.steps = 50;
  c.outputs = {"noisy_visibility"};
  const auto by_car = run_sweep(c);
  for (std::size_t k = 1; k < by_car.data.rows.size(); ++k) {
    EXPECT_GT(cell_number(by_car.data.rows[k][1]), cell_number(by_car.data.rows[k - 1][1]));
  }
  EXPECT_LT(cell_number(by_car.data.rows.back()[1]), 1.0);
  EXPECT_GT(cell_number(by_car.data.rows.back()[1]), 0.997);
}

TEST(Sweep, IndependentOfThreadCount) {
  SweepOptions o;
  o.axis = SweepAxis::kFm;
  o.from = 10.0;
  o.to = 40.0;
  o.steps = 37;
  o.outputs = {"efficiency", "suppression", "visibility", "noisy_visibility"};
  o.threads = 1;
  std::ostringstream serial;
  write_csv(serial, run_sweep(o).data);
  for (int threads : {2, 3, 8}) {
    o.threads = threads;
    std::ostringstream parallel;
    write_csv(parallel, run_sweep(o).data);
    EXPECT_EQ(parallel.str(), serial.str()) << threads << " threads";
  }
}

TEST(Sweep, RejectsBadRequests) {
  SweepOptions o;
  o.outputs = {"efficiency"};
  o.from = 1.0;
  o.to = 1.0;
  EXPECT_THROW(run_sweep(o), UsageError);
  o.to = 2.0;
  o.steps = 1;
  EXPECT_THROW(run_sweep(o), UsageError);
  o.steps = 3;
  o.outputs = {"colour"};
  EXPECT_THROW(run_sweep(o), UsageError);
  EXPECT_THROW(parse_sweep_axis("phase"), UsageError);
}

TEST(Optimize, ConversionAndTrim) {
  const auto conversion = run_optimize_conversion({});
  EXPECT_NEAR(summary_number(conversion, "m"), 1.8412, 1e-4);
  EXPECT_THROW(run_optimize_conversion({-1, 2.0, 1.0, 1e-6}), UsageError);

  BiasSet biases = paper_bias_preset();
  biases[0].alpha += 0.15;
  biases[2].theta -= 0.2;
  const auto trim = run_optimize_trim({ModulatorConfig(0.54, 25.0, biases), TrimObjective{}, 1e-6, 100});
  EXPECT_GT(summary_number(trim, "value_after"), summary_number(trim, "value_before"));
  EXPECT_GE(summary_number(trim, "value_after"), 22.0);
}

// Reproduce.

TEST(Reproduce, UnknownTargetIsUsageError) {
  EXPECT_THROW(parse_reproduce_target("fig3"), UsageError);
  EXPECT_EQ(parse_reproduce_target("budget"), ReproduceTarget::kBudget);
}

TEST(Reproduce, Fig2VisibilityColumn) {
  const auto report = build_report(ReproduceTarget::kFig2);
  ASSERT_EQ(report.datasets.size(), 1u);
  EXPECT_EQ(report.datasets[0].data.columns.size(), 6u);
  EXPECT_EQ(summary_number(report.summary, "failures"), 0.0);
}

TEST(Reproduce, BudgetCombined) {
  const auto report = build_report(ReproduceTarget::kBudget);
  bool found = false;
  for (const auto& row : report.summary.data.rows) {
    if (std::get<std::string>(row[0]) == "combined_stated_components") {
      found = true;
      EXPECT_NEAR(cell_number(row[1]), 0.930, 0.01);
      EXPECT_EQ(std::get<std::string>(row[4]), "PASS");
    }
  }
  EXPECT_TRUE(found);
}

TEST(Reproduce, WritesFilesInBothFormats) {
  const auto dir = scratch_dir("reproduce");
  for (auto target : {ReproduceTarget::kFig2, ReproduceTarget::kFig4, ReproduceTarget::kEfficiency,
                      ReproduceTarget::kBudget}) {
    const auto report = build_report(target);
    for (auto format : {Format::kCsv, Format::kJson}) {
      const auto paths = write_report(report, dir, format);
      EXPECT_EQ(paths.size(), report.datasets.size() + 1);
      for (const auto& p : paths) {
        ASSERT_TRUE(fs::exists(p)) << p;
        EXPECT_GT(fs::file_size(p), 0u);
        if (format == Format::kJson) {
          std::ifstream in(p);
          EXPECT_FALSE(nlohmann::json::parse(in, nullptr, false).is_discarded()) << p;
        }
      }
    }
  }
  std::ofstream(dir / "blocker") << "x";
  EXPECT_THROW(write_report(build_report(ReproduceTarget::kBudget), dir / "blocker", Format::kCsv), IoError);
}

// Exit codes of the executable.

int run_cli(const std::string& args) {
  const std::string command = std::string(OSSB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(ExitCodes, StableContract) {
  const auto dir = scratch_dir("exit");
  std::ofstream(dir / "typo.json") << R"({"m": 0.54, "f_m": 25, "bias": []})";
  const std::string out = (dir / "spectrum.csv").string();
  EXPECT_EQ(run_cli("spectrum --m 0.54 --f_m 25 --out " + out), kExitOk);
  EXPECT_TRUE(fs::exists(out));
  EXPECT_EQ(run_cli("spectrum --m 0.54"), kExitUsage);
  EXPECT_EQ(run_cli("spectrum --config " + (dir / "typo.json").string()), kExitUsage);
  EXPECT_EQ(run_cli("spectrum --config " + (dir / "absent.json").string()), kExitIo);
  EXPECT_EQ(run_cli("frobnicate"), kExitUsage);
  EXPECT_EQ(run_cli("hom --sigma_s -1 --sigma_i 8 --delta 0"), kExitUsage);
  EXPECT_EQ(run_cli("sweep --axis m --from 1 --to 1 --steps 5"), kExitUsage);
  EXPECT_EQ(run_cli("reproduce fig3"), kExitUsage);
  EXPECT_EQ(run_cli("reproduce budget --out " + (dir / "typo.json" / "sub").string()), kExitIo);
  EXPECT_EQ(run_cli("reproduce budget --out " + (dir / "report").string() + " --format json"), kExitOk);
}

}  // namespace
}  // namespace ossb::cli
