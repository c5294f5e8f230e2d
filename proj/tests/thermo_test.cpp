#include <cmath>

#include <gtest/gtest.h>

#include "lylab/error.hpp"
#include "lylab/polyengine.hpp"
#include "lylab/thermo.hpp"
#include "oracle.hpp"

using namespace lylab;

namespace {

Complex ring_partition(const TransferOperator& T, int L) {
  ComplexLD z = std::exp(log_ring_partition(T, L));
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Thermo, RingTraceMatchesEnumeration) {
  for (Complex h : {Complex(0.3, 0), Complex(0.5, 0.7)}) {
    auto T = build_transfer(ising_strip(1, 0.8, 1.1, h));
    for (int L : {3, 4, 9, 14}) {
      auto ring = ising_model(LatticeSpec::chain(L), 0.8, 1.1, h);
      EXPECT_LT(rel(ring_partition(T, L), oracle::to_c(oracle::partition(ring))), 1e-12) << L;
    }
  }
}

TEST(Thermo, StripTraceMatchesTorus) {
  Complex h(0.4, 0.2);
  auto T = build_transfer(ising_strip(3, 0.6, 0.9, h));
  EXPECT_EQ(T.dimension(), 8);
  auto torus = ising_model(LatticeSpec::square(4, 3), 0.6, 0.9, h);
  EXPECT_LT(rel(ring_partition(T, 4), evaluate_partition(torus)), 1e-12);
}

TEST(Thermo, LeadingEigenvalueZeroField) {
  auto T = build_transfer(ising_strip(1, 1, 1, {0, 0}));
  // split form with weights 1/2 removed: 2 cosh(beta J), 2 sinh(beta J)
  EXPECT_NEAR(std::abs(T.eigenvalues[0]), 2 * std::cosh(1.0), 1e-13);
  EXPECT_NEAR(std::abs(T.eigenvalues[1]), 2 * std::sinh(1.0), 1e-13);
}

TEST(Thermo, FreeEnergyIndependentSpins) {
  const double beta = 0.7, h = 0.9;
  auto f = free_energy_density(build_transfer(ising_strip(1, 0, beta, {h, 0})));
  EXPECT_NEAR(f.f_inf.real(), -std::log(2 * std::cosh(beta * h)) / beta, 1e-14);
}

TEST(Thermo, FreeEnergyConvergenceRate) {
  auto f = free_energy_density(build_transfer(ising_strip(1, 1, 1, {1, 0.5})), 40);
  EXPECT_GT(f.predicted_rate, 0);
  EXPECT_NEAR(f.observed_rate, f.predicted_rate, 0.1 * f.predicted_rate);
  // Z_L -> lambda_1^L geometrically
  ASSERT_FALSE(f.f_L.empty());
  EXPECT_LT(std::abs(f.f_L.back() - f.f_inf), 1e-10);
}

TEST(Thermo, EigenvalueCrossingRaised) {
  // purely imaginary h: lambda_{1,2} form a conjugate pair of equal modulus
  auto T = build_transfer(ising_strip(1, 1, 1, {0, 0.5}));
  try {
    free_energy_density(T);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EigenvalueCrossing);
  }
}

TEST(Thermo, MassGapClosedForm) {
  auto g = mass_gap(build_transfer(ising_strip(1, 1, 1, {0, 0})));
  EXPECT_FALSE(g.infinite);
  EXPECT_NEAR(g.m, std::log(1 / std::tanh(1.0)), 1e-13);
  EXPECT_TRUE(mass_gap(build_transfer(ising_strip(1, 0, 1, {0.5, 0}))).infinite);
}

TEST(Thermo, MassGapIncreasesWithField) {
  double prev = 0;
  for (double h = 0.1; h <= 2.0001; h += 0.1) {
    double m = mass_gap(build_transfer(ising_strip(1, 1, 1, {h, 0}))).m;
    EXPECT_GT(m, prev) << h;
    prev = m;
  }
}

TEST(Thermo, MassGapFitAgreesWithSpectrum) {
  auto fit = mass_gap_fit(ising_strip(1, 1, 1, {0, 0}), {0.2, 0});
  EXPECT_LT(fit.discrepancy, 1e-4);
  EXPECT_NEAR(fit.m, fit.spectral, 1e-4 * fit.spectral);
}

// 1D Ising: m = sinh(beta h) / sqrt(sinh^2(beta h) + e^{-4 beta J})
TEST(Thermo, LimitMagnetizationClosedForm) {
  const double J = 1, beta = 1;
  for (double h : {0.05, 0.3, 1.0}) {
    auto lm = limit_magnetization(ising_strip(1, J, beta, {h, 0}), h);
    double s = std::sinh(beta * h), c = std::cosh(beta * h), q = std::exp(-4 * beta * J);
    double m = s / std::sqrt(s * s + q);
    double dm = beta * c * q / std::pow(s * s + q, 1.5);
    EXPECT_NEAR(lm.m, m, 1e-12) << h;
    EXPECT_NEAR(lm.dm, dm, 1e-9 * dm) << h;
    EXPECT_LT(lm.d2m, 0) << h;
  }
}

TEST(Thermo, BoundaryConditionsIndependentSpins) {
  auto r = bc_independence_check(0, 1, {0.5, 0}, {4, 6, 8});
  for (const auto& row : r.rows) EXPECT_LT(row.difference, 1e-15);
  EXPECT_TRUE(r.monotone);
}

TEST(Thermo, BoundaryConditionsDecay) {
  for (Complex h : {Complex(0.5, 0), Complex(0.5, 0.4)}) {
    auto r = bc_independence_check(0.25, 1, h, {4, 6, 8, 10, 12, 14, 16});
    EXPECT_TRUE(r.monotone);
    EXPECT_LT(r.rate, 1);
    EXPECT_LT(r.final_gap, 1e-6);
  }
}

TEST(Thermo, RFunctionIndependentSpins) {
  std::vector<RStudyPoint> grid{{{0.7, 0.3}, {}}};
  auto s = r_function_study(0, 1, {3, 5}, {}, grid);
  for (const auto& row : s.rows) EXPECT_NEAR(row.abs_R, std::abs(std::cosh(Complex(0.7, 0.3))), 1e-14);
  EXPECT_TRUE(s.bounded);
  EXPECT_LT(s.stability, 1e-14);
}

TEST(Thermo, RFunctionBoundedOnCone) {
  std::vector<std::vector<int>> modes{{1}, {2}};
  auto grid = cone_grid(modes, 0.5, 1.5, 3, -1, 1, 3, 0.8, 2, 17);
  auto s = r_function_study(1, 1, {10, 12}, modes, grid);
  EXPECT_TRUE(s.bounded);
  EXPECT_FALSE(s.zero_alarm);
  for (const auto& row : s.rows) EXPECT_LE(row.abs_R, row.bound);
}

TEST(Thermo, DeltaProbe) {
  EXPECT_THROW(critical_exponent_probe(0, 1, {1}, {0.1, 0.05}), Error);
  auto p = critical_exponent_probe(1, 1, {1}, {0.01, 0.005, 0.0025});
  ASSERT_EQ(p.fits.size(), 1u);
  // the 1D correlation length stays finite as h -> 0
  EXPECT_LT(std::fabs(p.fits[0].slope), 1e-2);
  auto q = critical_exponent_probe(1, 1, {1}, {0.01, 0.005, 0.0025});
  EXPECT_EQ(p.fits[0].slope, q.fits[0].slope);
}

TEST(Thermo, TransferRejectsWideStrips) {
  EXPECT_THROW(build_transfer(ising_strip(kMaxTransferWidth + 1, 1, 1, {0.1, 0})), Error);
}
