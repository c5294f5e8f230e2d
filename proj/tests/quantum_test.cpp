#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lylab/error.hpp"
#include "lylab/quantum.hpp"

using namespace lylab;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

QuantumModel single(double s, double beta, std::array<Complex, 3> h) {
  auto q = QuantumModel::make(1, s, beta);
  q.set_uniform_field(h);
  return q;
}

}  // namespace

TEST(Quantum, SpinAlgebra) {
  for (double s = 0.5; s <= 8; s += 0.5) {
    auto ops = SpinOperators::make(s);
    EXPECT_EQ(ops.dimension(), static_cast<int>(2 * s + 1));
    EXPECT_LT(ops.commutator_residual(), 1e-12) << s;
    // Casimir s(s+1)
    Eigen::MatrixXcd c = ops.sigma[0] * ops.sigma[0] + ops.sigma[1] * ops.sigma[1] + ops.sigma[2] * ops.sigma[2];
    EXPECT_LT((c - s * (s + 1) * Eigen::MatrixXcd::Identity(c.rows(), c.cols())).norm(), 1e-11) << s;
  }
}

TEST(Quantum, SingleSpinHalf) {
  for (int axis = 0; axis < 3; ++axis) {
    std::array<Complex, 3> h{0, 0, 0};
    h[axis] = 0.8;
    EXPECT_LT(rel(quantum_partition(single(0.5, 1.5, h)).value, std::cosh(1.5 * 0.8 / 2)), 1e-14) << axis;
  }
}

TEST(Quantum, ComplexFieldSingleSpin) {
  Complex h(0.6, 0.9);
  auto Q = quantum_partition(single(0.5, 1, {h, 0, 0}));
  EXPECT_EQ(Q.method, "pade");
  EXPECT_LT(rel(Q.value, std::cosh(h / 2.0)), 1e-13);
}

TEST(Quantum, TrivialModel) {
  auto q = QuantumModel::all_to_all(3, 1, 1, {0, 0, 0});
  EXPECT_NEAR(quantum_partition(q).value.real(), 1, 1e-14);
}

// Heisenberg pair J = 1: singlet at +3/4, triplet at -1/4.
TEST(Quantum, SingletTriplet) {
  auto q = QuantumModel::all_to_all(2, 0.5, 1, {1, 1, 1});
  double expect = (3 * std::exp(0.25) + std::exp(-0.75)) / 4;
  EXPECT_LT(rel(quantum_partition(q).value, expect), 1e-14);
}

// Spin s in field h along axis 3, rescaled: (2s+1)^{-1} sum_m e^{beta h m / s}.
TEST(Quantum, RescaledDiagonalSum) {
  for (double s : {0.5, 1.0, 2.5, 6.0}) {
    auto q = single(s, 1.2, {0, 0, 0.7});
    double sum = 0;
    for (double m = -s; m <= s + 1e-9; m += 1) sum += std::exp(1.2 * 0.7 * m / s);
    sum /= 2 * s + 1;
    EXPECT_LT(rel(rescaled_partition(q).value, sum), 1e-13) << s;
  }
}

TEST(Quantum, RotationInvariance) {
  // cyclic relabelling of axes (3 -> 1 -> 2 -> 3) applied to couplings and field
  auto c = QuantumModel::all_to_all(2, 1, 0.8, {0.5, 0.5, 1});
  c.set_uniform_field({0, 0, 0.9});
  auto d = QuantumModel::all_to_all(2, 1, 0.8, {1, 0.5, 0.5});
  d.set_uniform_field({0.9, 0, 0});
  EXPECT_LT(rel(quantum_partition(c).value, quantum_partition(d).value), 1e-13);
}

TEST(Quantum, RealFieldsGivePositiveValues) {
  auto q = QuantumModel::all_to_all(3, 0.5, 1, {1, 0.3, -0.2});
  q.set_uniform_field({0.4, 0.1, -0.3});
  auto Q = quantum_partition(q);
  EXPECT_EQ(Q.method, "eigen");
  EXPECT_GT(Q.value.real(), 0);
  EXPECT_EQ(Q.value.imag(), 0);
}

TEST(Quantum, ClassicalLimit) {
  LimitOptions opt;
  opt.s_values = {0.5, 2, 8};
  opt.t_grid = {0.5, 1.0, 1.5};
  auto study = classical_limit_study(single(0.5, 1, {0, 0, 0}), opt);
  ASSERT_EQ(study.rows.size(), 3u);
  // single spin: classical value sinh(t)/t
  for (std::size_t i = 0; i < opt.t_grid.size(); ++i)
    EXPECT_NEAR(study.classical[i], std::sinh(opt.t_grid[i]) / opt.t_grid[i], 1e-12);
  EXPECT_GT(study.rows[0].sup_deviation, study.rows[2].sup_deviation);
  EXPECT_TRUE(study.nonincreasing);
}

TEST(Quantum, ZeroScanFerromagnet) {
  auto q = QuantumModel::all_to_all(2, 0.5, 1, {1, 0.5, -0.5});
  GridSpec grid{0.1, 2, 6, -2, 2, 7};
  auto r = quantum_zero_scan(q, grid);
  EXPECT_TRUE(r.passed()) << r.min_normalized;
}

// cosh(beta h / 2) vanishes at h = i pi / beta, on the boundary Re h^1 = 0.
TEST(Quantum, WitnessOutsideRegion) {
  GridSpec grid{0, 0, 1, std::numbers::pi, std::numbers::pi, 1};
  QuantumScanOptions opt;
  opt.transverse_fraction = 0;
  auto r = quantum_zero_scan(single(0.5, 1, {0, 0, 0}), grid, opt);
  EXPECT_TRUE(r.passed());
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_FALSE(r.witnesses[0].inside_region);
}

TEST(Quantum, DimensionLimit) {
  EXPECT_THROW(QuantumModel::make(13, 0.5, 1), Error);
  EXPECT_THROW(QuantumModel::make(5, 3, 1), Error);
}

TEST(Quantum, HashStable) {
  auto a = QuantumModel::all_to_all(2, 1, 1, {1, 0, 0});
  auto b = QuantumModel::all_to_all(2, 1, 1, {1, 0, 0});
  EXPECT_EQ(quantum_hash(a), quantum_hash(b));
  b.beta = 1.5;
  EXPECT_NE(quantum_hash(a), quantum_hash(b));
}
