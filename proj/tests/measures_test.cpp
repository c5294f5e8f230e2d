#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lylab/error.hpp"
#include "lylab/measures.hpp"

using namespace lylab;

TEST(Measures, IsingLaplaceIsCosh) {
  auto m = SingleSpinMeasure::ising();
  auto v = laplace_transform(m, {1.0, 0.0});
  EXPECT_NEAR(v.value.real(), std::cosh(1.0), 1e-15);
  EXPECT_EQ(v.value.imag(), 0.0);
}

TEST(Measures, IsingVanishesOnImaginaryAxis) {
  auto v = laplace_transform(SingleSpinMeasure::ising(), {0.0, std::numbers::pi / 2});
  EXPECT_LT(std::abs(v.value), 1e-15);
}

TEST(Measures, UniformLaplace) {
  auto m = SingleSpinMeasure::uniform(-1, 1);
  for (double h : {0.5, 2.0, 5.0}) {
    auto v = laplace_transform(m, {h, 0});
    EXPECT_NEAR(v.value.real(), std::sinh(h) / h, 1e-13 * std::sinh(h) / h) << h;
  }
  // integral of e^{i t s} ds / 2 = sin(t) / t
  auto w = laplace_transform(m, {0, 3.0});
  EXPECT_NEAR(w.value.real(), std::sin(3.0) / 3.0, 1e-14);
  EXPECT_NEAR(w.value.imag(), 0.0, 1e-14);
}

TEST(Measures, SphereLaplace) {
  // uniform on S^2: <e^{h s^1}> = sinh(h) / h
  auto m = SingleSpinMeasure::sphere_uniform(3);
  for (double h : {0.3, 1.0, 4.0}) {
    auto v = laplace_transform(m, {h, 0});
    EXPECT_NEAR(v.value.real(), std::sinh(h) / h, 1e-12 * std::sinh(h) / h) << h;
  }
  // first zero of sin(t)/t
  EXPECT_LT(std::abs(laplace_transform(m, {0, std::numbers::pi}).value), 1e-12);
}

TEST(Measures, NormalizationAtZeroField) {
  for (const auto& m : {SingleSpinMeasure::ising(), SingleSpinMeasure::uniform(-1, 1, 2.5),
                        SingleSpinMeasure::quartic(1, 0)}) {
    auto v = laplace_transform(m, {0, 0});
    EXPECT_NEAR(v.value.real(), m.normalization(), 1e-12 * m.normalization()) << m.describe();
  }
}

TEST(Measures, EvenMeasuresGiveEvenTransforms) {
  std::vector<SingleSpinMeasure> ms{SingleSpinMeasure::ising(), SingleSpinMeasure::uniform(-1, 1),
                                    SingleSpinMeasure::quartic(1, -0.5),
                                    SingleSpinMeasure::atoms({{-2, 0.3}, {0, 0.4}, {2, 0.3}})};
  for (const auto& m : ms) {
    ASSERT_EQ(m.symmetry(), Symmetry::Even) << m.describe();
    for (Complex h : {Complex(0.7, 0.2), Complex(1.3, -1.1), Complex(0.1, 2.0)}) {
      Complex a = laplace_transform(m, h).value, b = laplace_transform(m, -h).value;
      EXPECT_LT(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a))) << m.describe() << " " << h;
    }
  }
}

TEST(Measures, GaussLegendreLowOrders) {
  auto m = SingleSpinMeasure::uniform(-1, 1);
  auto r1 = quadrature_rule(m, 1);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_NEAR(r1[0].node, 0.0, 1e-16);
  EXPECT_NEAR(r1[0].weight, 1.0, 1e-15);
  auto r2 = quadrature_rule(m, 2);
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_NEAR(std::fabs(r2[0].node), 1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r2[0].node, -r2[1].node, 1e-16);
  EXPECT_NEAR(r2[0].weight, 0.5, 1e-15);
  EXPECT_NEAR(r2[1].weight, 0.5, 1e-15);
}

TEST(Measures, UniformOrderDoubling) {
  auto m = SingleSpinMeasure::uniform(-1, 1);
  auto v = laplace_transform(m, {3.0, 1.0});
  EXPECT_LT(v.rel_error, 1e-10);
}

// Normalized e^{-s^4} at h = 1 against the moment series
// sum_k h^{2k} / (2k)! Gamma((2k+1)/4) / Gamma(1/4).
TEST(Measures, QuarticConvergence) {
  const double h = 1.0;
  long double series = 0, term = 1;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) term *= h * h / ((2.0L * k - 1) * (2.0L * k));
    series += term * std::tgamma((2.0L * k + 1) / 4) / std::tgamma(0.25L);
  }
  auto value = [&](int order) {
    auto m = SingleSpinMeasure::quartic(1, 0, order);
    long double s = 0;
    for (const auto& q : quadrature_rule(m, order, h)) s += q.weight * std::exp(static_cast<long double>(h * q.node));
    return static_cast<double>(s);
  };
  double ref = static_cast<double>(series);
  EXPECT_NEAR(value(64), ref, 1e-12);
  EXPECT_NEAR(value(36), ref, 1e-10);
  EXPECT_NEAR(value(32), ref, 1e-9);
  EXPECT_NEAR(laplace_transform(SingleSpinMeasure::quartic(1, 0), {h, 0}).value.real(), ref, 1e-12);
}

TEST(Measures, VerifyLeeYangConditionPasses) {
  GridSpec grid{0.05, 3, 12, -3, 3, 13};
  auto rect = RegionSpec::rectangle(0.05, 3, -3, 3);
  for (const auto& m : {SingleSpinMeasure::ising(), SingleSpinMeasure::uniform(-1, 1),
                        SingleSpinMeasure::atoms({{-2, 0.5}, {2, 0.5}})}) {
    auto r = verify_ly_condition(m, rect, grid);
    EXPECT_TRUE(r.passed()) << m.describe() << " min " << r.min_normalized;
    EXPECT_EQ(r.points_inside, grid.size());
  }
}

TEST(Measures, VerifyLeeYangConditionFindsBoundaryZero) {
  // Ising zero at h = i pi/2 sits on Re h = 0, outside the open half-plane.
  GridSpec grid{0, 1, 2, std::numbers::pi / 2, std::numbers::pi / 2, 1};
  auto r = verify_ly_condition(SingleSpinMeasure::ising(), RegionSpec::half_plane(), grid);
  EXPECT_TRUE(r.passed());
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_FALSE(r.witnesses.front().inside_region);
  EXPECT_LT(r.witnesses.front().normalized_modulus, 1e-12);
}

TEST(Measures, RejectsBadInput) {
  EXPECT_THROW(SingleSpinMeasure::uniform(1, -1), Error);
  EXPECT_THROW(SingleSpinMeasure::atoms({}), Error);
  EXPECT_THROW(quadrature_rule(SingleSpinMeasure::ising(), 4), Error);
}
