#include <gtest/gtest.h>

#include <cmath>

#include "phaseswitch/serialize.hpp"
#include "phaseswitch/sweep.hpp"

using namespace phaseswitch;

namespace {

const AtomParams kUnit{1.0};

// Lossless closed form in the coordinate s = 4x.
double ratio_at_scaled(double s) { return (s - 1.0) / (s + 1.0); }

}  // namespace

TEST(GridTest, Validation) {
  EXPECT_THROW((Grid{GridAxis::beta, 1.0, 1.0, 3}.validate()), InvalidParameter);
  EXPECT_THROW((Grid{GridAxis::beta, 0.1, 1.0, 1}.validate()), InvalidParameter);
  const Grid g{GridAxis::log10_scaled_intensity, -2.0, 2.0, 201};
  EXPECT_EQ(g.value(0), -2.0);
  EXPECT_EQ(g.value(100), 0.0);
  EXPECT_EQ(g.value(200), 2.0);
}

TEST(ResponseSweepTest, DefaultGridCurveFeatures) {
  const auto rows = response_sweep(kUnit, Grid{});
  ASSERT_EQ(rows.size(), 201u);
  EXPECT_EQ(rows[100].axis_value, 0.0);
  EXPECT_EQ(rows[100].amplitude_ratio, 0.0);
  EXPECT_EQ(rows[100].noise_fraction, 1.0);
  EXPECT_NEAR(rows.front().amplitude_ratio, -1.0, 0.02);
  EXPECT_NEAR(rows.back().amplitude_ratio, 1.0, 0.02);
  EXPECT_NEAR(rows.front().amplitude_ratio, ratio_at_scaled(0.01), 1e-12);
}

TEST(ResponseSweepTest, TwoPointGrid) {
  const auto rows = response_sweep(kUnit, Grid{GridAxis::log10_scaled_intensity, -1.0, 3.0, 2});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].axis_value, -1.0);
  EXPECT_EQ(rows[1].axis_value, 3.0);
}

TEST(ResponseSweepTest, RowsMatchCoreAndAreMonotone) {
  const auto rows = response_sweep(kUnit, Grid{GridAxis::log10_scaled_intensity, -3.0, 3.0, 301});
  int sign_changes = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    EXPECT_EQ(r.amplitude_ratio, response_ratio(r.x));
    EXPECT_NEAR(r.coherent_fraction, r.amplitude_ratio * r.amplitude_ratio, 1e-12);
    EXPECT_NEAR(r.coherent_fraction + r.noise_fraction, 1.0, 1e-12);
    const auto s = steady_state(kUnit, std::sqrt(r.x));
    EXPECT_NEAR(r.sigma_z, s.state.sigma_z, 1e-15);
    EXPECT_NEAR(r.amplitude_ratio, s.b_out.real() / std::sqrt(r.x), 1e-12);
    if (i > 0) {
      EXPECT_GT(r.amplitude_ratio, rows[i - 1].amplitude_ratio);
      if ((rows[i - 1].amplitude_ratio < 0.0) != (r.amplitude_ratio < 0.0)) ++sign_changes;
    }
  }
  EXPECT_EQ(sign_changes, 1);
}

TEST(ResponseSweepTest, NoiseFractionPeaksAtSwitchingPoint) {
  const auto rows = response_sweep(kUnit, Grid{GridAxis::log10_scaled_intensity, -2.0, 2.0, 81});
  std::size_t peak = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].noise_fraction > rows[peak].noise_fraction) peak = i;
  }
  EXPECT_EQ(rows[peak].axis_value, 0.0);
  EXPECT_NEAR(rows[peak].noise_fraction, 1.0, 1e-12);
}

TEST(ResponseSweepTest, LossyRowsUseGeneralSteadyState) {
  const AtomParams p(1.0, 0.5);
  const auto rows = response_sweep(p, Grid{GridAxis::log10_scaled_intensity, -4.0, 4.0, 41});
  EXPECT_NEAR(rows.front().amplitude_ratio, linear_response(p), 1e-3);
  for (const auto& r : rows) {
    // cavity-channel fractions exclude the non-cavity loss
    EXPECT_LT(r.coherent_fraction + r.noise_fraction, 1.0);
    EXPECT_GT(r.coherent_fraction + r.noise_fraction, 0.0);
  }
}

TEST(ResponseSweepTest, WrongAxisRejected) {
  EXPECT_THROW(response_sweep(kUnit, Grid{GridAxis::beta, 0.1, 1.0, 5}), InvalidParameter);
}

TEST(ResponseSweepTest, ThreadedOutputIsByteIdentical) {
  const Grid grid{GridAxis::log10_scaled_intensity, -3.0, 3.0, 997};
  const AtomParams p(0.7, 0.2);
  const std::string serial = sweep_csv(response_sweep(p, grid, {1}));
  for (unsigned threads : {2u, 3u, 8u}) {
    EXPECT_EQ(sweep_csv(response_sweep(p, grid, {threads})), serial) << threads << " threads";
  }
}

TEST(BetaSweepTest, Examples) {
  const auto rows = beta_sweep(Grid{GridAxis::beta, 0.5, 1.0, 6}, 1.0);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].beta, 0.5);
  EXPECT_EQ(rows[0].linear_ratio, 0.0);
  EXPECT_EQ(rows[0].gamma_loss, 2.0);
  EXPECT_NEAR(rows[2].beta, 0.7, 1e-15);
  EXPECT_NEAR(rows[2].linear_ratio, -0.4, 1e-15);
  EXPECT_EQ(rows[5].beta, 1.0);
  EXPECT_EQ(rows[5].linear_ratio, -1.0);
  EXPECT_EQ(rows[5].gamma_loss, 0.0);
  for (const auto& r : rows) {
    EXPECT_NEAR(linear_response(AtomParams(1.0, r.gamma_loss)), r.linear_ratio, 1e-14);
  }
}

TEST(BetaSweepTest, DomainErrors) {
  EXPECT_THROW(beta_sweep(Grid{GridAxis::beta, 0.0, 1.0, 3}, 1.0), DomainError);
  EXPECT_THROW(beta_sweep(Grid{GridAxis::beta, 0.5, 1.1, 3}, 1.0), DomainError);
  EXPECT_THROW(beta_sweep(Grid{GridAxis::log10_scaled_intensity, 0.5, 1.0, 3}, 1.0),
               InvalidParameter);
}

TEST(SerializeTest, CsvHeadersAndRoundTripNumbers) {
  const auto rows = response_sweep(kUnit, Grid{GridAxis::log10_scaled_intensity, -2.0, 2.0, 5});
  const std::string csv = sweep_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kSweepCsvHeader);

  for (double v : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }

  const auto json = sweep_json(rows);
  ASSERT_EQ(json.size(), 5u);
  EXPECT_EQ(json[2]["amplitude_ratio"].get<double>(), rows[2].amplitude_ratio);
  EXPECT_EQ(json[0].size(), 7u);
}
