#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lylab/correlations.hpp"
#include "lylab/error.hpp"
#include "lylab/tools/instances.hpp"
#include "oracle.hpp"

using namespace lylab;
using lylab::tools::MeasureChoice;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Complex avg(const SpinModel& m, std::vector<int> sites) {
  std::vector<SpinInsertion> ins;
  for (int s : sites) ins.push_back({s, 0});
  return thermal_average(m, ins);
}

}  // namespace

TEST(Correlations, SingleSpinMagnetization) {
  for (double h : {0.1, 0.7, 2.0}) {
    auto m = ising_model(LatticeSpec::chain(1), 0, 1.3, {h, 0});
    EXPECT_NEAR(avg(m, {0}).real(), std::tanh(1.3 * h), 1e-15);
  }
}

TEST(Correlations, TwoSpinCorrelation) {
  auto m = ising_model(LatticeSpec::chain(2, Boundary::Free), 1, 1, {0, 0});
  EXPECT_NEAR(avg(m, {0, 1}).real(), std::tanh(1.0), 1e-15);
  EXPECT_EQ(avg(m, {0}), Complex(0, 0));
}

TEST(Correlations, MomentsMatchBruteForce) {
  SplitMix64 rng(61);
  for (int i = 0; i < 15; ++i) {
    Complex h(rng.uniform(0.1, 1), rng.uniform(-1, 1));
    auto m = lylab::tools::random_ferro_model(61, i, MeasureChoice::Ising, 0.6, h, {.max_sites = 8});
    std::vector<int> sites{0, m.sites() - 1};
    EXPECT_LT(rel(avg(m, sites), oracle::to_c(oracle::moment(m, sites))), 1e-13) << i;
  }
}

TEST(Correlations, UrsellRoutesAgreeWithBruteForce) {
  SplitMix64 rng(62);
  for (int i = 0; i < 12; ++i) {
    Complex h(rng.uniform(0.3, 1.5), rng.uniform(-1, 1));
    auto m = lylab::tools::random_ferro_model(62, i, MeasureChoice::Ising, 0.7, h, {.max_sites = 8});
    int n = 2 + i % 3;
    UrsellSpec spec;
    for (int a = 0; a < n; ++a) spec.sites.push_back(static_cast<int>(rng.below(m.sites())));
    Complex ref = oracle::to_c(oracle::cumulant(m, spec.sites));
    Complex mo = ursell_moebius(m, spec).value, ep = ursell_epsilon_derivative(m, spec).value;
    double scale = std::max(std::abs(ref), 1e-6);
    EXPECT_LT(std::abs(mo - ref) / scale, 1e-10) << i;
    EXPECT_LT(std::abs(ep - ref) / scale, 1e-8) << i;
  }
}

TEST(Correlations, UrsellRoutesAgreeForUniformSpins) {
  SpinModel m(LatticeSpec::chain(3, Boundary::Free), SingleSpinMeasure::uniform(-1, 1, 1.0, 24), [] {
    Interaction I = Interaction::dense(3);
    I.set_pair(0, 1, 0.8);
    I.set_pair(1, 2, 0.5);
    return I;
  }(), FieldSpec::uniform({0.7, 0.3}), 1);
  UrsellSpec spec{{0, 1, 2}, {}};
  Complex a = ursell_moebius(m, spec).value, b = ursell_epsilon_derivative(m, spec).value;
  EXPECT_LT(std::abs(a - b) / std::abs(a), 1e-8);
}

TEST(Correlations, FirstUrsellIsMagnetization) {
  auto m = ising_model(LatticeSpec::chain(5), 0.9, 1, {0.4, 0.2});
  UrsellSpec spec{{2}, {}};
  EXPECT_LT(rel(ursell_moebius(m, spec).value, avg(m, {2})), 1e-14);
}

TEST(Correlations, IndependentSpinsHaveNoConnectedPart) {
  auto m = ising_model(LatticeSpec::chain(4), 0, 1, {0.6, 0});
  EXPECT_LT(std::abs(ursell_moebius(m, UrsellSpec{{0, 2}, {}}).value), 1e-15);
  EXPECT_LT(std::abs(ursell_epsilon_derivative(m, UrsellSpec{{0, 1, 3}, {}}).value), 1e-12);
}

TEST(Correlations, OddUrsellsVanishAtZeroField) {
  auto m = ising_model(LatticeSpec::chain(6), 0.8, 1, {0, 0});
  EXPECT_EQ(ursell_moebius(m, UrsellSpec{{0}, {}}).value, Complex(0, 0));
  EXPECT_LT(std::abs(ursell_moebius(m, UrsellSpec{{0, 1, 3}, {}}).value), 1e-15);
}

TEST(Correlations, UrsellSymmetricInArguments) {
  auto m = lylab::tools::random_ferro_model(63, 1, MeasureChoice::Ising, 0.8, {0.5, 0.3}, {.max_sites = 8});
  Complex a = ursell_moebius(m, UrsellSpec{{0, 1, 2, 3}, {}}).value;
  Complex b = ursell_moebius(m, UrsellSpec{{3, 1, 0, 2}, {}}).value;
  EXPECT_LT(std::abs(a - b), 1e-15 * std::max(1.0, std::abs(a)));
}

TEST(Correlations, FourierZeroModeIsMagnetization) {
  auto m = ising_model(LatticeSpec::chain(6), 0.7, 1, {0.4, 0});
  auto r = fourier_connected(m, {{0}}, UrsellRoute::Moebius);
  EXPECT_TRUE(r.constraint_ok);
  EXPECT_LT(rel(r.value, avg(m, {0})), 1e-14);
}

TEST(Correlations, FourierPairMatchesDoubleSum) {
  const int L = 6;
  auto m = ising_model(LatticeSpec::chain(L), 0.7, 1, {0.4, 0.1});
  for (int k = 0; k < L; ++k) {
    Complex expect = 0;
    for (int x = 0; x < L; ++x)
      for (int y = 0; y < L; ++y) {
        Complex phase = std::exp(Complex(0, 2 * std::numbers::pi * k * (x - y) / L));
        expect += phase * oracle::to_c(oracle::cumulant(m, {x, y}));
      }
    expect /= static_cast<double>(L);
    for (auto route : {UrsellRoute::Moebius, UrsellRoute::EpsilonDerivative}) {
      auto r = fourier_connected(m, {{k}, {(L - k) % L}}, route);
      EXPECT_TRUE(r.constraint_ok);
      EXPECT_LT(std::abs(r.value - expect), 1e-9 * std::max(1.0, std::abs(expect))) << k;
    }
  }
}

TEST(Correlations, FourierConstraintViolationIsZero) {
  auto m = ising_model(LatticeSpec::chain(6), 0.7, 1, {0.4, 0});
  auto r = fourier_connected(m, {{1}, {1}}, UrsellRoute::Moebius);
  EXPECT_FALSE(r.constraint_ok);
  EXPECT_EQ(r.value, Complex(0, 0));
}

// At J = 0 only the single-site variance survives: 1 - tanh^2(beta h).
TEST(Correlations, FourierIndependentSpins) {
  auto m = ising_model(LatticeSpec::chain(4), 0, 1, {0.3, 0});
  auto r = fourier_connected(m, {{1}, {3}}, UrsellRoute::Moebius);
  EXPECT_NEAR(r.value.real(), 1 - std::pow(std::tanh(0.3), 2), 1e-14);
  EXPECT_NEAR(r.value.imag(), 0, 1e-15);
}

TEST(Correlations, GhsAndGriffithsOnRandomFerromagnets) {
  for (int i = 0; i < 10; ++i) {
    auto m = lylab::tools::random_ferro_model(64, i, MeasureChoice::Ising, 0.8, {0.3, 0}, {.max_sites = 6});
    for (auto k : {InequalityKind::GHS, InequalityKind::Griffiths, InequalityKind::FKG}) {
      auto r = inequality_suite(m, k);
      EXPECT_TRUE(r.passed()) << i << " " << to_string(k) << " worst " << r.worst;
    }
  }
}

TEST(Correlations, GhsPreconditionNeedsFerromagnet) {
  auto r = inequality_suite(ising_model(LatticeSpec::chain(4), -0.5, 1, {0.3, 0}), InequalityKind::GHS);
  EXPECT_FALSE(r.preconditions_ok);
  EXPECT_FALSE(r.passed());
}

TEST(Correlations, MagnetizationProfileSingleSpin) {
  auto m = ising_model(LatticeSpec::chain(1), 0, 1, {0, 0});
  std::vector<double> grid{0.1, 0.5, 1.0, 2.0};
  auto t = magnetization_profile(m, grid);
  ASSERT_EQ(t.rows.size(), grid.size());
  for (const auto& r : t.rows) {
    double th = std::tanh(r.h);
    EXPECT_NEAR(r.m, th, 1e-15);
    EXPECT_NEAR(r.dm, 1 - th * th, 1e-14);
    EXPECT_NEAR(r.d2m, -2 * th * (1 - th * th), 1e-13);
  }
  EXPECT_TRUE(t.positive && t.increasing && t.concave);
}

// d<sigma_0>/dh = beta sum_z <sigma_0; sigma_z>, against a central difference of the oracle.
TEST(Correlations, MagnetizationDerivativeIdentity) {
  auto base = ising_model(LatticeSpec::chain(5), 0.9, 0.8, {0, 0});
  std::vector<double> grid{0.3};
  auto t = magnetization_profile(base, grid);
  const double h = 0.3, d = 1e-5;
  auto m_at = [&](double x) {
    return oracle::moment(base.with_field(FieldSpec::uniform({x, 0})), {0}).real();
  };
  double fd = static_cast<double>((m_at(h + d) - m_at(h - d)) / (2 * d));
  EXPECT_NEAR(t.rows[0].dm, fd, 1e-9);
  EXPECT_NEAR(t.rows[0].m, static_cast<double>(m_at(h)), 1e-14);
}

TEST(Correlations, SingularAverageRefused) {
  auto m = ising_model(LatticeSpec::chain(1), 0, 1, {0, std::numbers::pi / 2});
  try {
    avg(m, {0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularAverage);
  }
}
