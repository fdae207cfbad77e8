#include "ossb/optimize.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"

namespace ossb {
namespace {

ModulatorConfig preset(double m) { return ModulatorConfig(m, 25.0, paper_bias_preset()); }

double efficiency(double m) { return conversion_efficiency(ossb_compose(preset(m)), -1); }

TEST(GoldenSection, FindsParabolaPeak) {
  const auto r = golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, -1.0,
                                         2.0, 1e-9);
  EXPECT_TRUE(r.converged);
  EXPECT_FALSE(r.at_boundary);
  EXPECT_NEAR(r.point.front(), 0.3, 1e-8);
  EXPECT_LE(r.tolerance_achieved, 1e-9);
}

TEST(GoldenSection, BracketInvariantHolds) {
  int steps = 0;
  golden_section_maximize(efficiency, 0.5, 3.0, 1e-6, 200, [&](const BracketStep& s) {
    ++steps;
    EXPECT_LE(s.lo, s.x1);
    EXPECT_LE(s.x1, s.x2);
    EXPECT_LE(s.x2, s.hi);
    EXPECT_GE(std::max(s.f1, s.f2), s.f_lo);
    EXPECT_GE(std::max(s.f1, s.f2), s.f_hi);
  });
  EXPECT_GT(steps, 10);
}

TEST(GoldenSection, RejectsEmptyBracket) {
  EXPECT_THROW(golden_section_maximize([](double) { return 0.0; }, 1.0, 1.0, 1e-6),
               std::invalid_argument);
}

TEST(MaximizeConversion, RecoversFirstLobePeak) {
  // Dense scan oracle at step 1e-4: peak at 1.8412.
  const double grid_peak = testing::grid_argmax(efficiency, 0.5, 3.0, 1e-4);
  EXPECT_NEAR(grid_peak, 1.8412, 1e-4);

  const auto r = maximize_conversion(-1, 0.5, 3.0, 1e-6);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.point.front(), 1.8412, 1e-4);
  EXPECT_NEAR(r.point.front(), grid_peak, 1e-4);
  EXPECT_NEAR(r.value, 0.3386, 0.0007);
  EXPECT_GT(r.value, efficiency(r.point.front() - 0.05));
  EXPECT_GT(r.value, efficiency(r.point.front() + 0.05));
}

TEST(MaximizeConversion, BoundaryMaximumIsFlagged) {
  const auto r = maximize_conversion(-1, 0.0, 0.1, 1e-6);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(r.at_boundary);
  EXPECT_EQ(r.point.front(), 0.1);
  EXPECT_FALSE(r.diagnostic.empty());
}

TEST(MaximizeConversion, Deterministic) {
  const auto a = maximize_conversion(-1, 0.5, 3.0, 1e-6);
  const auto b = maximize_conversion(-1, 0.5, 3.0, 1e-6);
  EXPECT_EQ(a.point, b.point);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(MaximizeConversion, RejectsBadArguments) {
  EXPECT_THROW(maximize_conversion(-1, -0.1, 1.0, 1e-6), std::invalid_argument);
  EXPECT_THROW(maximize_conversion(-1, 1.0, 0.5, 1e-6), std::invalid_argument);
  EXPECT_THROW(maximize_conversion(-1, 0.0, 11.0, 1e-6), std::invalid_argument);
  EXPECT_THROW(maximize_conversion(-1, 0.0, 3.0, 1e-7), std::invalid_argument);
}

const TrimObjective kSuppression{TrimObjective::Kind::kSuppression, -1};

TEST(TrimBiases, PresetIsNearOptimal) {
  // Order-3 leakage can be shaved by ~0.14 dB at the cost of tiny carrier
  // leakage, so a fine tolerance moves the biases slightly.
  const double preset_db = kSuppression.evaluate(preset(0.54));
  const auto fine = trim_biases(preset(0.54), kSuppression, 1e-6, 50);
  EXPECT_GE(fine.result.value, preset_db);
  EXPECT_LT(fine.result.value, preset_db + 0.5);
  const BiasSet ref = paper_bias_preset();
  for (int k = 0; k < 4; ++k) {
    const auto& b = fine.config.biases()[static_cast<std::size_t>(k)];
    const auto close = [](double a, double r) {
      const double d = std::remainder(a - r, 2.0 * M_PI);
      return std::fabs(d) < 0.1;
    };
    EXPECT_TRUE(close(b.alpha, ref[static_cast<std::size_t>(k)].alpha)) << k;
    EXPECT_TRUE(close(b.theta, ref[static_cast<std::size_t>(k)].theta)) << k;
  }

  const auto coarse = trim_biases(preset(0.54), kSuppression, 0.5, 50);
  EXPECT_EQ(coarse.config, preset(0.54));
  EXPECT_TRUE(coarse.result.converged);
}

TEST(TrimBiases, SingleAlphaError) {
  BiasSet b = paper_bias_preset();
  b[1].alpha += 0.1;
  const ModulatorConfig perturbed(0.54, 25.0, b);
  const auto r = trim_biases(perturbed, kSuppression, 1e-6, 50);
  EXPECT_GE(suppression_ratio_db(ossb_compose(r.config), -1), 22.0);
  EXPECT_GE(r.result.value, kSuppression.evaluate(perturbed));
}

TEST(TrimBiases, RandomPerturbationsNeverGetWorse) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> err(-0.2, 0.2);
    BiasSet b = paper_bias_preset();
    for (auto& x : b) {
      x.alpha += err(rng);
      x.theta += err(rng);
    }
    const ModulatorConfig perturbed(0.54, 25.0, b);
    const double before = kSuppression.evaluate(perturbed);
    const auto r = trim_biases(perturbed, kSuppression, 1e-6, 100);
    EXPECT_GE(r.result.value, before) << "seed " << seed;
    EXPECT_EQ(r.result.value, kSuppression.evaluate(r.config)) << "seed " << seed;
  }
}

TEST(TrimBiases, EfficiencyObjective) {
  BiasSet b = paper_bias_preset();
  b[2].theta += 0.25;
  const ModulatorConfig perturbed(1.8412, 25.0, b);
  const TrimObjective eff{TrimObjective::Kind::kEfficiency, -1};
  const auto r = trim_biases(perturbed, eff, 1e-12, 50);
  EXPECT_GT(r.result.value, eff.evaluate(perturbed));
  EXPECT_NEAR(r.result.value, 0.338567, 1e-5);
}

TEST(TrimBiases, Deterministic) {
  BiasSet b = paper_bias_preset();
  b[0].theta += 0.15;
  b[3].alpha -= 0.12;
  const ModulatorConfig perturbed(0.54, 25.0, b);
  const auto r1 = trim_biases(perturbed, kSuppression, 1e-6, 50);
  const auto r2 = trim_biases(perturbed, kSuppression, 1e-6, 50);
  EXPECT_EQ(r1.result.point, r2.result.point);
  EXPECT_EQ(r1.result.value, r2.result.value);
}

}  // namespace
}  // namespace ossb
