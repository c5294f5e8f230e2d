#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lylab/error.hpp"
#include "lylab/leeyang.hpp"
#include "lylab/polyengine.hpp"
#include "lylab/tools/instances.hpp"

using namespace lylab;
using lylab::tools::MeasureChoice;

TEST(LeeYang, CircleTheoremOnRandomFerromagnets) {
  for (int i = 0; i < 20; ++i) {
    auto m = lylab::tools::random_ferro_model(51, i, MeasureChoice::Ising, 0.25 + 0.1 * i, {0, 0}, {.max_sites = 12});
    auto r = circle_theorem_check(m);
    EXPECT_EQ(r.verdict, CircleVerdict::Pass) << i;
    EXPECT_LT(r.max_deviation, 1e-9) << i;
    EXPECT_LT(r.palindrome_defect, 1e-30) << i;
  }
}

// Root set of a palindromic polynomial is closed under z -> 1 / conj(z).
TEST(LeeYang, RootsClosedUnderInversion) {
  auto m = lylab::tools::random_ferro_model(52, 3, MeasureChoice::Ising, 0.7, {0, 0}, {.max_sites = 9});
  auto r = circle_theorem_check(m);
  for (const auto& a : r.roots.roots) {
    ComplexLD inv = 1.0L / std::conj(a.z);
    long double best = 1;
    for (const auto& b : r.roots.roots) best = std::min(best, std::abs(b.z - inv));
    EXPECT_LT(static_cast<double>(best), 1e-12);
  }
}

TEST(LeeYang, FreeSpinsHaveRootsAtMinusOne) {
  auto r = circle_theorem_check(ising_model(LatticeSpec::chain(6), 0, 1, {0, 0}));
  EXPECT_EQ(r.verdict, CircleVerdict::Pass);
  ASSERT_EQ(r.roots.clusters.size(), 1u);
  EXPECT_EQ(r.roots.clusters[0].multiplicity, 6);
  EXPECT_LT(std::abs(r.roots.clusters[0].centroid + 1.0L), 1e-12);
}

TEST(LeeYang, AntiferromagnetFlagged) {
  auto r = circle_theorem_check(ising_model(LatticeSpec::chain(4), -1, 1, {0, 0}));
  EXPECT_FALSE(r.preconditions_ok);
  EXPECT_EQ(r.verdict, CircleVerdict::PreconditionViolated);
}

TEST(LeeYang, HalfPlaneScanSquare) {
  auto m = ising_model(LatticeSpec::square(3, 3), 1, 1, {0, 0});
  GridSpec grid{0.1, 2, 11, -2, 2, 11};
  auto r = zero_free_scan(m, RegionSpec::half_plane(), grid);
  EXPECT_TRUE(r.passed()) << r.min_normalized;
  EXPECT_EQ(r.points_inside, grid.size());
  EXPECT_GT(r.min_normalized, 1e-8);
}

TEST(LeeYang, FreeSpinWitnessOnImaginaryAxis) {
  auto m = ising_model(LatticeSpec::chain(1), 0, 1, {0, 0});
  GridSpec grid{0, 1, 2, std::numbers::pi / 2, std::numbers::pi / 2, 1};
  auto r = zero_free_scan(m, RegionSpec::half_plane(), grid);
  EXPECT_TRUE(r.passed());
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_FALSE(r.witnesses[0].inside_region);
  EXPECT_NEAR(r.witnesses[0].point[0].imag(), std::numbers::pi / 2, 1e-15);
}

TEST(LeeYang, ModulatedConeScan) {
  auto m = ising_model(LatticeSpec::chain(6), 0.8, 1, {0.5, 0});
  GridSpec grid{0.5, 1.5, 3, -1, 1, 5};
  ScanOptions opt;
  opt.cone_fraction = 0.6;
  opt.samples_per_point = 4;
  opt.seed = 5;
  auto r = zero_free_scan(m, RegionSpec::cone(2), grid, opt);
  EXPECT_TRUE(r.passed()) << r.min_normalized;
  EXPECT_EQ(r.points_inside, grid.size() * 4);
}

TEST(LeeYang, ScanIsDeterministicAcrossJobs) {
  auto m = ising_model(LatticeSpec::chain(8), 0.6, 0.9, {0.5, 0});
  GridSpec grid{0.2, 1, 4, -1, 1, 4};
  ScanOptions a, b;
  a.seed = b.seed = 3;
  a.samples_per_point = b.samples_per_point = 2;
  b.jobs = 3;
  auto ra = zero_free_scan(m, RegionSpec::cone(2), grid, a);
  auto rb = zero_free_scan(m, RegionSpec::cone(2), grid, b);
  EXPECT_EQ(ra.min_normalized, rb.min_normalized);
  EXPECT_EQ(ra.argmin, rb.argmin);
}

TEST(LeeYang, RotatorPairOmegaPlus) {
  Interaction I = Interaction::dense(2, 2);
  I.set_pair(0, 1, 1.0, 0);
  I.set_pair(0, 1, 0.5, 1);
  SpinModel m(LatticeSpec::chain(2, Boundary::Free), SingleSpinMeasure::sphere_uniform(2), I,
              FieldSpec::uniform({0.5, 0}), 1);
  GridSpec grid{0.2, 1.5, 4, -1.5, 1.5, 5};
  ScanOptions opt;
  opt.samples_per_point = 2;
  auto r = multi_component_zero_scan(m, grid, opt);
  EXPECT_TRUE(r.passed()) << r.min_normalized;
  EXPECT_GT(r.points_inside, 0u);
}

TEST(LeeYang, HeisenbergPairOmegaPlus) {
  Interaction I = Interaction::dense(2, 3);
  I.set_pair(0, 1, 1.0, 0);
  I.set_pair(0, 1, -1.0, 1);
  I.set_pair(0, 1, -1.0, 2);
  SpinModel m(LatticeSpec::chain(2, Boundary::Free), SingleSpinMeasure::sphere_uniform(3), I,
              FieldSpec::uniform({0.5, 0}), 1);
  GridSpec grid{0.3, 1.5, 3, -1, 1, 3};
  auto r = multi_component_zero_scan(m, grid);
  EXPECT_TRUE(r.passed()) << r.min_normalized;
}

// sinh(|h|)/|h| vanishes at h^1 = i pi, which lies outside Omega_3^+.
TEST(LeeYang, SphereWitnessOutsideRegion) {
  SpinModel m(LatticeSpec::chain(1), SingleSpinMeasure::sphere_uniform(3), Interaction::dense(1, 3),
              FieldSpec::uniform({0, 0}), 1);
  GridSpec grid{0, 0, 1, std::numbers::pi, std::numbers::pi, 1};
  ScanOptions opt;
  opt.transverse_fraction = 0;
  auto r = multi_component_zero_scan(m, grid, opt);
  EXPECT_TRUE(r.passed());
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_FALSE(r.witnesses[0].inside_region);
}

TEST(LeeYang, ConverseRecoversPairCouplings) {
  Interaction I = Interaction::dense(4);
  I.set_pair(0, 1, 0.7);
  I.set_pair(1, 2, 0.3);
  I.set_pair(2, 3, 1.1);
  I.set_pair(0, 3, 0.2);
  SpinModel m(LatticeSpec::chain(4, Boundary::Free), SingleSpinMeasure::ising(), I, FieldSpec::uniform({0, 0}), 1.2);
  auto res = converse_probe(partition_polynomial(m));
  ASSERT_EQ(res.kind, ConverseResult::Kind::Factorization);
  EXPECT_LT(res.residual, 1e-10);
  EXPECT_GE(res.min_coupling, -1e-10);
  for (const auto& c : res.couplings) EXPECT_NEAR(c.J, I.pair(c.x, c.y), 1e-10) << c.x << "," << c.y;
}

TEST(LeeYang, ConverseFindsViolation) {
  // uniform reduction (1 + z)(1 + 7.1 z + z^2): real roots inside the disc
  std::vector<Quad> c{1, 5, 0.1, 3, 3, 0.1, 5, 1};
  auto res = converse_probe(ActivityPolynomial(3, c));
  ASSERT_EQ(res.kind, ConverseResult::Kind::Violation);
  EXPECT_LT(res.witness_modulus, 1);
  EXPECT_EQ(res.witness.size(), 3u);
}

TEST(LeeYang, ConverseRejectsAsymmetricInput) {
  std::vector<Quad> c{1, 2, 3, 4};
  EXPECT_THROW(converse_probe(ActivityPolynomial(2, c)), Error);
}
