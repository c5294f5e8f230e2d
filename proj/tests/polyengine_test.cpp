#include <cmath>

#include <gtest/gtest.h>

#include "lylab/error.hpp"
#include "lylab/polyengine.hpp"
#include "lylab/tools/instances.hpp"
#include "oracle.hpp"

using namespace lylab;
using lylab::tools::MeasureChoice;

namespace {

double d(const Quad& q) { return static_cast<double>(q); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ActivityPolynomial poly(int n, std::vector<double> c) {
  std::vector<Quad> q(c.begin(), c.end());
  return ActivityPolynomial(n, q);
}

}  // namespace

TEST(PolyEngine, TwoSpinCoefficients) {
  auto m = ising_model(LatticeSpec::chain(2, Boundary::Free), 1, 1, {0, 0});
  auto P = partition_polynomial(m);
  ASSERT_EQ(P.size(), 4u);
  const double e = std::exp(1.0);
  // E_X = exp(beta H(+) - beta H(X)): flipping one spin of two costs 2J
  std::vector<double> expect{1, std::exp(-2.0), std::exp(-2.0), 1};
  for (std::uint32_t X = 0; X < 4; ++X) EXPECT_NEAR(d(P[X]) / d(P[0]), expect[X], 1e-15) << X;
  // relative to e: (e, 1/e, 1/e, e)
  EXPECT_NEAR(e * d(P[1]) / d(P[0]), 1 / e, 1e-15);
}

TEST(PolyEngine, FreeSpin) {
  auto P = partition_polynomial(ising_model(LatticeSpec::chain(1), 0, 1, {0, 0}));
  ASSERT_EQ(P.size(), 2u);
  EXPECT_EQ(d(P[0]), d(P[1]));
}

TEST(PolyEngine, CoefficientsMatchBruteForce) {
  for (int i = 0; i < 20; ++i) {
    auto m = lylab::tools::random_ferro_model(41, i, MeasureChoice::Ising, 0.8, {0, 0}, {.max_sites = 10});
    auto P = partition_polynomial(m);
    auto h = effective_fields(m);
    // E_X / E_0 = exp(beta (H(+) - H(X)))
    auto top = oracle::minus_energy(m, h, 0);
    for (std::uint32_t X = 0; X < P.size(); X += 7) {
      auto ref = exp(oracle::Q(m.beta()) * (oracle::minus_energy(m, h, X) - top)).real();
      // coefficient exponentials are taken in long double
      EXPECT_LT(abs((P[X] / P[0] - ref) / ref), 1e-17) << i << " " << X;
    }
  }
}

TEST(PolyEngine, Palindrome) {
  for (int i = 0; i < 10; ++i) {
    auto m = lylab::tools::random_ferro_model(42, i, MeasureChoice::Ising, 1.0, {0, 0}, {.max_sites = 12});
    auto P = partition_polynomial(m);
    EXPECT_LT(P.symmetry_defect(), 1e-30);
    auto a = P.uniform_reduction();
    int n = P.nvars();
    for (int k = 0; k <= n; ++k) EXPECT_LT(d(abs(a[k] - a[n - k]) / a[0]), 1e-30);
  }
}

TEST(PolyEngine, PartitionValueMatchesEngine) {
  SplitMix64 rng(9);
  for (int i = 0; i < 50; ++i) {
    Complex h(rng.uniform(0.05, 1.5), rng.uniform(-2, 2));
    auto m = lylab::tools::random_ferro_model(43, i, MeasureChoice::Ising, rng.uniform(0.2, 1.2), h,
                                              {.max_sites = 10});
    auto P = partition_polynomial(m);
    auto hv = effective_fields(m);
    ComplexLD a = P.partition_value(hv);
    Complex b = evaluate_partition(m);
    EXPECT_LT(rel({static_cast<double>(a.real()), static_cast<double>(a.imag())}, b), 1e-12) << i;
    EXPECT_LT(rel(b, oracle::to_c(oracle::partition(m))), 1e-12) << i;
  }
}

TEST(PolyEngine, ClosedFormPartitions) {
  Complex h(0.6, 0.4);
  auto one = ising_model(LatticeSpec::chain(1), 0, 1.5, h);
  EXPECT_LT(rel(evaluate_partition(one), std::cosh(1.5 * h)), 1e-14);
  // <e^{beta(J s1 s2 + h s1 + h s2)}> = (e^{J} cosh(2h) + e^{-J}) / 2 at beta = 1
  auto two = ising_model(LatticeSpec::chain(2, Boundary::Free), 1, 1, h);
  Complex expect = (std::exp(1.0) * std::cosh(2.0 * h) + std::exp(-1.0)) / 2.0;
  EXPECT_LT(rel(evaluate_partition(two), expect), 1e-14);
  // uniform spin: sinh(beta h) / (beta h)
  auto u = SpinModel(LatticeSpec::chain(1), SingleSpinMeasure::uniform(-1, 1), Interaction::dense(1),
                     FieldSpec::uniform(h), 2.0);
  EXPECT_LT(rel(evaluate_partition(u), std::sinh(2.0 * h) / (2.0 * h)), 1e-13);
}

TEST(PolyEngine, SchurHadamard) {
  auto ones = poly(2, {1, 1, 1, 1});
  auto P = poly(2, {2, 3, 5, 7});
  auto Q = poly(2, {1.5, 0.5, 0.25, 4});
  auto a = schur_hadamard(P, ones);
  for (std::uint32_t X = 0; X < 4; ++X) EXPECT_EQ(a[X], P[X]);
  auto pq = schur_hadamard(P, Q), qp = schur_hadamard(Q, P);
  for (std::uint32_t X = 0; X < 4; ++X) {
    EXPECT_EQ(pq[X], qp[X]);
    EXPECT_EQ(d(pq[X]), d(P[X]) * d(Q[X]));
  }
  EXPECT_THROW(schur_hadamard(P, poly(1, {1, 1})), Error);
}

TEST(PolyEngine, AsanoContraction) {
  // (1 + z_i)(1 + z_j) = 1 + z_i + z_j + z_i z_j -> 1 + w
  auto P = asano_contract(poly(2, {1, 1, 1, 1}), 0, 1);
  ASSERT_EQ(P.nvars(), 1);
  EXPECT_EQ(d(P[0]), 1);
  EXPECT_EQ(d(P[1]), 1);
  // B = C = 0: A + D z_i z_j -> A + D w
  auto Q = asano_contract(poly(2, {2, 0, 0, 3}), 0, 1);
  EXPECT_EQ(d(Q[0]), 2);
  EXPECT_EQ(d(Q[1]), 3);
}

// Gluing the two bonds of a 3-site chain at the shared site gives its polynomial.
TEST(PolyEngine, AsanoGluesChains) {
  auto bond = [](double J) {
    auto m = ising_model(LatticeSpec::chain(2, Boundary::Free), 0, 0.9, {0, 0});
    Interaction I = Interaction::dense(2);
    I.set_pair(0, 1, J);
    return partition_polynomial(SpinModel(m.lattice(), m.measure(), I, m.field(), m.beta()));
  };
  auto P12 = bond(0.7), P23 = bond(1.3);
  auto glued = asano_contract(tensor_product(P12, P23), 1, 2);
  Interaction I = Interaction::dense(3);
  I.set_pair(0, 1, 0.7);
  I.set_pair(1, 2, 1.3);
  auto chain = partition_polynomial(SpinModel(LatticeSpec::chain(3, Boundary::Free), SingleSpinMeasure::ising(), I,
                                              FieldSpec::uniform({0, 0}), 0.9));
  ASSERT_EQ(glued.size(), chain.size());
  for (std::uint32_t X = 0; X < chain.size(); ++X)
    EXPECT_LT(d(abs(glued[X] / glued[0] - chain[X] / chain[0])), 1e-17) << X;
}

TEST(PolyEngine, QuarticDecompositionPairsOnly) {
  auto m = ising_model(LatticeSpec::chain(4), 0.8, 1, {0, 0});
  auto D = quartic_decomposition(m);
  EXPECT_TRUE(D.quartic_tilde.empty());
  for (const auto& p : D.pair_tilde) EXPECT_DOUBLE_EQ(p.J, 2 * m.interaction().pair(p.x, p.y));
  for (std::uint32_t X = 0; X < D.z4.size(); ++X) EXPECT_EQ(d(D.z4[X]), 1);
  EXPECT_LT(D.reconstruction_error, 1e-15);
}

TEST(PolyEngine, QuarticDecompositionSingleTerm) {
  const double J = 0.3;
  Interaction I = Interaction::dense(4);
  I.add_quartic({0, 1, 2, 3}, J);
  SpinModel m(LatticeSpec::chain(4, Boundary::Free), SingleSpinMeasure::ising(), I, FieldSpec::uniform({0, 0}), 1);
  auto D = quartic_decomposition(m);
  ASSERT_EQ(D.quartic_tilde.size(), 1u);
  EXPECT_DOUBLE_EQ(D.quartic_tilde[0].J, 8 * J);
  ASSERT_EQ(D.pair_tilde.size(), 6u);
  for (const auto& p : D.pair_tilde) EXPECT_DOUBLE_EQ(p.J, -2 * J);
  // jtilde0 is stored in double
  EXPECT_LT(D.reconstruction_error, 1e-15);
  // E = exp(beta jtilde0) E2 E4 against the 16 configurations directly
  auto P = partition_polynomial(m);
  for (std::uint32_t X = 0; X < 16; ++X) {
    Quad rebuilt = exp(Quad(m.beta() * D.jtilde0)) * D.z2[X] * D.z4[X];
    EXPECT_LT(d(abs(rebuilt / P[X] - 1)), 1e-15) << X;
  }
}

TEST(PolyEngine, QuarticConditions) {
  const double J = std::log(2.0) / 8;
  auto build = [](double JU, double Jpair) {
    Interaction I = Interaction::dense(4);
    I.add_quartic({0, 1, 2, 3}, JU);
    for (int x = 0; x < 4; ++x)
      for (int y = x + 1; y < 4; ++y) I.set_pair(x, y, Jpair);
    return SpinModel(LatticeSpec::chain(4, Boundary::Free), SingleSpinMeasure::ising(), I,
                     FieldSpec::uniform({0, 0}), 1);
  };
  EXPECT_TRUE(check_quartic_ly_conditions(build(J, 1)).both());
  auto weak = check_quartic_ly_conditions(build(J - 0.01, 1));
  EXPECT_FALSE(weak.condition1);
  EXPECT_TRUE(weak.condition2);
  auto loose = check_quartic_ly_conditions(build(J, 0.5 * J));
  EXPECT_TRUE(loose.condition1);
  EXPECT_FALSE(loose.condition2);
}

TEST(PolyEngine, JsonRoundTrip) {
  auto P = partition_polynomial(ising_model(LatticeSpec::chain(5), 0.6, 1.1, {0, 0}));
  auto Q = polynomial_from_json(polynomial_to_json(P));
  ASSERT_EQ(Q.size(), P.size());
  for (std::uint32_t X = 0; X < P.size(); ++X) EXPECT_EQ(Q[X], P[X]);
  EXPECT_EQ(Q.model_hash, P.model_hash);
}

TEST(PolyEngine, SizeLimit) {
  auto m = ising_model(LatticeSpec::chain(kMaxPolynomialSites + 1), 1, 1, {0, 0});
  try {
    partition_polynomial(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeOverflow);
  }
}
