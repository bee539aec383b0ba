#include <gtest/gtest.h>

#include "generators.hpp"
#include "property_checks.hpp"

using namespace phaseswitch;
using namespace phaseswitch::testing;

namespace {

void expect_ok(const CheckResult& r) {
  EXPECT_GE(r.trials, 1000);
  EXPECT_EQ(r.failures, 0) << "first failure: " << r.first_failure << " (worst " << r.worst << ")";
}

}  // namespace

TEST(PropertyTest, BlochBound) { expect_ok(check_bloch_bound(1000, 1)); }

TEST(PropertyTest, NoiseNonNegative) { expect_ok(check_noise_bounds(2000, 2, false)); }

TEST(PropertyTest, NoiseAboveLowerBound) { expect_ok(check_noise_bounds(2000, 3, true)); }

TEST(PropertyTest, PhaseCovariance) { expect_ok(check_phase_covariance(2000, 4)); }

TEST(PropertyTest, ScaleCovariance) { expect_ok(check_scale_covariance(2000, 5)); }

TEST(PropertyTest, SteadyStateEnergyBalance) { expect_ok(check_energy_balance(5000, 6)); }

TEST(PropertyTest, LosslessSteadyStateReproducesResponseRatio) {
  Generator gen(7);
  for (int i = 0; i < 1000; ++i) {
    const AtomParams p(gen.log_uniform(1e-2, 1e2));
    const Complex b = gen.drive(p);
    const auto s = steady_state(p, b);
    const double x = std::norm(b) / p.big_gamma();
    const Complex ratio = s.b_out / b;
    ASSERT_NEAR(ratio.real(), response_ratio(x), 1e-12) << describe(p, b);
    ASSERT_NEAR(ratio.imag(), 0.0, 1e-12) << describe(p, b);
    const auto f = intensity_fractions(x);
    ASSERT_NEAR(std::norm(ratio), f.coherent, 1e-12);
    ASSERT_NEAR(s.p_noise / std::norm(b), f.noise, 1e-12);
  }
}

TEST(PropertyTest, WeakDriveReproducesLinearResponse) {
  Generator gen(8);
  for (int i = 0; i < 1000; ++i) {
    const AtomParams p = gen.params();
    const Complex b = std::polar(std::sqrt(1e-8 * p.big_gamma()), gen.uniform(-3.0, 3.0));
    const Complex ratio = steady_state(p, b).b_out / b;
    const double expected = linear_response(p);
    ASSERT_LE(std::abs(ratio - expected), 1e-6 * std::max(std::abs(expected), 0.1))
        << describe(p, b);
  }
}

TEST(PropertyTest, SteadyStateIsFixedPointOfBlochEquations) {
  Generator gen(9);
  for (int i = 0; i < 1000; ++i) {
    const AtomParams p = gen.params();
    const Complex b = gen.drive(p);
    const auto s = steady_state(p, b);
    // The drive term scales with |b|, so normalize by Gamma + |b| sqrt(Gamma).
    const double scale = p.big_gamma() + std::abs(b) * std::sqrt(p.big_gamma());
    ASSERT_LE(bloch_rhs(p, b, s.state).norm(), 1e-12 * scale) << describe(p, b);
  }
}
