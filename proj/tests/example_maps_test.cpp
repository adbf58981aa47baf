#include "tamelab/example_maps.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tamelab/errors.hpp"
#include "test_support.hpp"

namespace tamelab {
namespace {

using SF = SmoothFunction;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

SF sin_two_pi() { return SF::compose(ScalarPrimitive::sin(), SF::affine(kTwoPi, 0.0)); }
SF t_plus_exp() { return SF::identity() + SF::compose(ScalarPrimitive::exp(), SF::identity()); }

double sup_distance(const SampledFunction& fd, const SF& exact) {
  double d = 0.0;
  for (std::size_t i = 0; i < fd.s.size(); ++i) {
    d = std::max(d, std::abs(fd.values[i] - exact.evaluate(fd.s[i])));
  }
  return d;
}

TEST(MapSpecTest, Validation) {
  EXPECT_THROW(MapSpec::pullback(sin_two_pi(), 0), UsageError);
  EXPECT_THROW(MapSpec::pullback(SF::compose(ScalarPrimitive::sin(), SF::identity()), 1), UsageError);
  EXPECT_NO_THROW(MapSpec::pullback(SF::constant(0.7), 3));
  EXPECT_THROW(MapSpec::composition(sin_two_pi()), UsageError);
  EXPECT_THROW(MapSpec::composition(SF::affine(-1.0, 0.0)), UsageError);
  EXPECT_NO_THROW(MapSpec::composition(t_plus_exp()));
  const auto ex4 = MapSpec::composition(t_plus_exp());
  EXPECT_THROW(ex4.element(SF::sinusoid(0.1, 1.0, 0.0, Domain::Periodic1)), UsageError);
}

TEST(InDomainTest, Examples) {
  const auto ex2 = MapSpec::pullback(sin_two_pi(), 1);
  const auto zero = in_domain(ex2, SF::constant(0.0, Domain::Periodic1));
  EXPECT_EQ(zero.margin, 1.0);
  EXPECT_TRUE(zero.inside);

  // p_1(x) = 2 with x' = 2 cos(2 pi s): 1 + x' changes sign.
  const auto x = SF::sinusoid(1.0 / std::numbers::pi, 1.0, 0.0, Domain::Periodic1);
  EXPECT_NEAR(seminorm_p(x, 1), 2.0, 1e-12);
  const auto out = in_domain(ex2, x);
  EXPECT_EQ(out.margin, 0.0);
  EXPECT_FALSE(out.inside);
  try {
    apply(ex2, x);
    FAIL() << "expected a domain error";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.margin(), 0.0);
  }

  const auto ex4 = MapSpec::composition(t_plus_exp());
  EXPECT_TRUE(in_domain(ex4, SF::sinusoid(50.0, 3.0, 0.0, Domain::UnitInterval)).inside);
}

TEST(ApplyTest, Examples) {
  const auto ex2 = MapSpec::pullback(sin_two_pi(), 1);
  const auto image = apply(ex2, SF::constant(0.0, Domain::Periodic1));
  EXPECT_EQ(image.domain(), Domain::Periodic1);
  EXPECT_NEAR(image.evaluate(0.25), 1.0, 1e-15);
  for (double s : {0.0, 0.1, 0.37, 0.9}) EXPECT_NEAR(image.evaluate(s), std::sin(kTwoPi * s), 1e-15);

  const auto ex4 = MapSpec::composition(t_plus_exp());
  const auto one = apply(ex4, SF::constant(0.0, Domain::UnitInterval));
  EXPECT_EQ(one.domain(), Domain::UnitInterval);
  EXPECT_EQ(one.constant_value(), 1.0);
}

TEST(ApplyProperty, PullbackImageIsPeriodic) {
  testing::TreeGenerator gen(41, Domain::Periodic1, 0.03, 2);
  for (int n : {1, -2, 3}) {
    const auto map = MapSpec::pullback(sin_two_pi(), n);
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = gen.tree();
      const auto y = apply(map, x);
      ASSERT_EQ(y.domain(), Domain::Periodic1);
      const double s = gen.uniform(-2.0, 2.0);
      EXPECT_NEAR(y.evaluate(s + 1.0), y.evaluate(s), 1e-12);
    }
  }
}

TEST(GateauxTest, Examples) {
  const auto ex2 = MapSpec::pullback(sin_two_pi(), 1);
  const auto x = SF::constant(0.0, Domain::Periodic1);
  const auto u = SF::constant(0.125, Domain::Periodic1);
  const auto d = gateaux(ex2, x, u);
  EXPECT_NEAR(d.evaluate(0.0), 0.125 * kTwoPi, 1e-15);
  EXPECT_NEAR(d.evaluate(0.0), 0.785398, 1e-6);
  const auto fd = gateaux_fd(ex2, x, u, 1e-4);
  EXPECT_LE(sup_distance(fd, d), 1e-7);

  const auto sin_u = SF::sinusoid(1.0, 1.0, 0.0, Domain::Periodic1);
  EXPECT_NEAR(gateaux(ex2, x, sin_u).evaluate(0.0), 0.0, 1e-15);

  testing::TreeGenerator gen(43, Domain::Periodic1, 0.02, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto xx = gen.tree();
    const auto uu = gen.tree();
    const auto one = gateaux(ex2, xx, uu);
    const auto two = gateaux(ex2, xx, 2.0 * uu);
    const double s = gen.uniform(0.0, 1.0);
    EXPECT_NEAR(two.evaluate(s), 2.0 * one.evaluate(s), 1e-13 * (1 + std::abs(one.evaluate(s))));
  }
}

TEST(GateauxFdTest, SecondOrderConvergence) {
  const auto ex2 = MapSpec::pullback(sin_two_pi(), 1);
  const auto x = SF::sinusoid(0.02, 1.0, 0.1, Domain::Periodic1);
  const auto u = SF::sinusoid(0.3, 2.0, 0.4, Domain::Periodic1) + SF::constant(0.2, Domain::Periodic1);
  const auto exact = gateaux(ex2, x, u);
  const double e2 = sup_distance(gateaux_fd(ex2, x, u, 1e-2), exact);
  const double e3 = sup_distance(gateaux_fd(ex2, x, u, 1e-3), exact);
  EXPECT_GT(e2 / e3, 80.0);
  EXPECT_LT(e2 / e3, 120.0);
}

TEST(GateauxFdTest, AffineCompositionIsExact) {
  const auto ex4 = MapSpec::composition(SF::affine(2.0, 1.0));
  const auto x = SF::sinusoid(0.4, 2.0, 0.1, Domain::UnitInterval);
  const auto u = SF::sinusoid(0.7, 1.0, 0.3, Domain::UnitInterval);
  const auto exact = gateaux(ex4, x, u);
  for (double t : {1e-1, 1e-3, 1e-6}) EXPECT_LE(sup_distance(gateaux_fd(ex4, x, u, t), exact), 1e-9);
}

TEST(GateauxFdTest, ZeroDirectionAndErrors) {
  const auto ex2 = MapSpec::pullback(sin_two_pi(), 1);
  const auto x = SF::sinusoid(0.02, 1.0, 0.1, Domain::Periodic1);
  const auto fd = gateaux_fd(ex2, x, SF::constant(0.0, Domain::Periodic1), 1e-3);
  EXPECT_EQ(fd.sup_abs(), 0.0);
  EXPECT_THROW(gateaux_fd(ex2, x, x, 0.0), UsageError);
  // x + t u leaves U for this large direction.
  const auto big = SF::sinusoid(1.0, 1.0, 0.0, Domain::Periodic1);
  EXPECT_THROW(gateaux_fd(ex2, x, big, 0.5), DomainError);
}

TEST(GateauxProperty, AgreesWithFiniteDifferences) {
  const auto ex2 = MapSpec::pullback(sin_two_pi(), 1);
  const auto ex4 = MapSpec::composition(t_plus_exp());
  testing::TreeGenerator periodic(47, Domain::Periodic1, 0.02, 2);
  testing::TreeGenerator interval(53, Domain::UnitInterval, 0.05, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x2 = periodic.tree();
    const auto u2 = periodic.tree();
    const double scale2 = 1.0 + seminorm_p(gateaux(ex2, x2, u2), 0);
    EXPECT_LE(sup_distance(gateaux_fd(ex2, x2, u2, 1e-4), gateaux(ex2, x2, u2)), 1e-5 * scale2);
    const auto x4 = interval.tree();
    const auto u4 = interval.tree();
    const double scale4 = 1.0 + seminorm_p(gateaux(ex4, x4, u4), 0);
    EXPECT_LE(sup_distance(gateaux_fd(ex4, x4, u4, 1e-4), gateaux(ex4, x4, u4)), 1e-5 * scale4);
  }
}

TEST(GateauxProperty, DegenerateOuterFunctionsGiveZeroDifference) {
  testing::TreeGenerator periodic(59, Domain::Periodic1, 0.02, 3);
  testing::TreeGenerator interval(61, Domain::UnitInterval, 0.5, 3);
  const auto ex2 = MapSpec::pullback(SF::constant(0.8), 2);
  const auto ex4 = MapSpec::composition(SF::affine(2.0, 1.0));
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = periodic.tree();
    const auto z = periodic.tree();
    const auto u = periodic.tree();
    const auto v = gateaux(ex2, x + z, u) - gateaux(ex2, x, u);
    EXPECT_EQ(sample(v).sup_abs(), 0.0);
    const auto xi = interval.tree();
    const auto zi = interval.tree();
    const auto ui = interval.tree();
    const auto vi = gateaux(ex4, xi + zi, ui) - gateaux(ex4, xi, ui);
    EXPECT_EQ(sample(vi).sup_abs(), 0.0);
  }
}

}  // namespace
}  // namespace tamelab
