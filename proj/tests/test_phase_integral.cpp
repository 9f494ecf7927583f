#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "boundstate/phase_integral.hpp"

using namespace boundstate;

namespace {
constexpr double kPi = std::numbers::pi;

double morse_theta(double e) { return kPi * (8.0 - std::sqrt(64.0 - e)); }
} // namespace

TEST(Action, HarmonicPhase) {
  const auto d = action(PotentialSpec::harmonic(-6.0, 6.0), 2.0);
  EXPECT_NEAR(d.theta, kPi, 1e-12);
  EXPECT_GT(d.ell_left, 0.0);
  EXPECT_NEAR(d.ell_left, d.ell_right, 1e-12);
}

TEST(Action, MorsePhase) {
  const auto d = action(PotentialSpec::morse(64.0, 1.0, -2.0, 2.0), 7.75);
  EXPECT_NEAR(d.theta, kPi / 2.0, 1e-10);
}

TEST(Action, SquareWellHasNoBarriers) {
  const auto d = action(PotentialSpec::square_well(1.0), 4.0);
  EXPECT_NEAR(d.theta, 4.0, 1e-13);
  EXPECT_EQ(d.ell_left, 0.0);
  EXPECT_EQ(d.ell_right, 0.0);
}

TEST(Action, ClosedFormPhaseOnRequest) {
  IntegralOptions opt;
  opt.closed_form_phase = true;
  const auto spec = PotentialSpec::morse(64.0, 1.0, -2.0, 2.0);
  EXPECT_EQ(action(spec, 20.0, opt).theta, morse_theta(20.0));
}

TEST(ConditionValue, Examples) {
  EXPECT_NEAR(condition_value({kPi, 0.0, 0.0}), 0.0, 1e-15);
  EXPECT_NEAR(condition_value({kPi / 2, 50.0, 50.0}), 0.0, 1e-15);
  EXPECT_NEAR(condition_value({kPi / 2, 0.0, 0.0}), -2.0, 1e-15);
}

TEST(ConditionValue, Limits) {
  for (double theta : {0.1, 1.0, 2.5, 4.0, 6.0}) {
    EXPECT_NEAR(condition_value({theta, 0.0, 0.0}), -2.0 * std::sin(theta), 1e-15);
    EXPECT_NEAR(condition_value({theta, 50.0, 50.0}), std::cos(theta), 1e-15);
  }
}

TEST(ConditionValue, Bounded) {
  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> theta(0.0, 200.0);
  std::exponential_distribution<double> ell(0.5);
  for (int i = 0; i < 100000; ++i) {
    const double r = condition_value({theta(rng), ell(rng), ell(rng)});
    ASSERT_LE(std::abs(r), 3.0);
  }
}

TEST(Action, ThetaStrictlyIncreasing) {
  const std::vector<std::pair<PotentialSpec, std::pair<double, double>>> cases{
      {PotentialSpec::square_well(1.0), {0.1, 60.0}},
      {PotentialSpec::harmonic(-6.0, 6.0), {0.1, 35.0}},
      {PotentialSpec::morse(64.0, 1.0, -2.0, 2.0), {0.1, 47.0}},
  };
  const auto rule = gauss_legendre(96);
  for (const auto& [spec, window] : cases) {
    double prev = -1.0;
    for (int j = 0; j <= 400; ++j) {
      const double e = window.first + (window.second - window.first) * j / 400.0;
      const double theta = action(spec, e, rule).theta;
      ASSERT_GT(theta, prev) << spec.name() << " E = " << e;
      prev = theta;
    }
  }
}

TEST(Action, NodeDoublingConverges) {
  const auto spec = PotentialSpec::harmonic(-6.0, 6.0);
  const double t64 = action(spec, 5.0, gauss_legendre(64)).theta;
  const double t128 = action(spec, 5.0, gauss_legendre(128)).theta;
  EXPECT_LT(std::abs(t64 - t128) / t128, 1e-8);
}

TEST(Action, MatchesClosedForms) {
  const auto ho = PotentialSpec::harmonic(-6.0, 6.0);
  const auto morse = PotentialSpec::morse(64.0, 1.0, -2.0, 2.0);
  const auto rule = gauss_legendre(96);
  for (double e = 0.25; e < 12.0; e += 0.25)
    EXPECT_NEAR(action(ho, e, rule).theta / (kPi * e / 2.0), 1.0, 1e-7) << e;
  // below the wall value at x = -2 (V(-2) ~ 2600) and at x = 2 (V(2) ~ 47.8)
  for (double e = 0.5; e < 47.0; e += 0.5)
    EXPECT_NEAR(action(morse, e, rule).theta / morse_theta(e), 1.0, 1e-7) << e;
}

TEST(SolveIntegral, Harmonic) {
  const auto r = solve_integral(PotentialSpec::harmonic(-6.0, 6.0), {1e-6, 12.0, 1200, 1e-10, 200});
  ASSERT_EQ(r.levels.size(), 6u);
  for (std::size_t p = 0; p < 6; ++p) {
    EXPECT_NEAR(r.levels[p].energy, 2.0 * p + 1.0, 1e-4);
    EXPECT_EQ(r.levels[p].method, Method::integral);
  }
}

TEST(SolveIntegral, SquareWell) {
  const auto r = solve_integral(PotentialSpec::square_well(1.0), {1e-6, 30.0, 1200, 1e-10, 200});
  ASSERT_EQ(r.levels.size(), 3u);
  for (std::size_t p = 1; p <= 3; ++p)
    EXPECT_NEAR(r.levels[p - 1].energy, p * p * kPi * kPi / 4.0, 1e-9);
}

TEST(SolveIntegral, MorseFindsFourLevels) {
  const auto r = solve_integral(PotentialSpec::morse(64.0, 1.0, -2.0, 2.0), {1e-6, 50.0, 1200, 1e-10, 200});
  ASSERT_EQ(r.levels.size(), 4u);
  EXPECT_NEAR(r.levels[0].energy, 7.75, 1e-3);
  // upper levels sit in the thin right barrier; they are checked in the acceptance run
  for (std::size_t i = 1; i < 4; ++i)
    EXPECT_GT(r.levels[i].energy, r.levels[i - 1].energy);
}

TEST(SolveIntegral, EmptyWindowBelowWell) {
  const auto r = solve_integral(PotentialSpec::harmonic(-6.0, 6.0), {-5.0, -1.0, 50, 1e-10, 200});
  EXPECT_TRUE(r.levels.empty());
  EXPECT_TRUE(r.failures.empty());
}

TEST(SolveIntegral, MultiWellAborts) {
  const auto dw = PotentialSpec::polynomial({0.0, 0.0, -4.0, 0.0, 1.0}, -3.0, 3.0);
  EXPECT_THROW(solve_integral(dw, {-3.5, 2.0, 100, 1e-9, 200}), multi_well_error);
}
