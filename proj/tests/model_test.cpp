#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lylab/config.hpp"
#include "lylab/error.hpp"
#include "lylab/model.hpp"
#include "lylab/tools/instances.hpp"

using namespace lylab;

namespace {

double energy(const SpinModel& m, std::vector<double> c) { return hamiltonian_value(m, c).real(); }

// Periodic lattice energy by listing every bond (x, x + e_axis) once per site and axis.
double edge_list_energy(const LatticeSpec& lat, double J, const std::vector<double>& c) {
  double e = 0;
  for (int x = 0; x < lat.volume(); ++x)
    for (int a = 0; a < lat.dimension(); ++a) {
      std::vector<int> off(lat.dimension(), 0);
      off[a] = 1;
      e -= J * c[x] * c[*lat.shift(x, off)];
    }
  return e;
}

}  // namespace

TEST(Model, HamiltonianExamples) {
  auto single = ising_model(LatticeSpec::chain(1), 0, 1, {2, 0});
  EXPECT_DOUBLE_EQ(energy(single, {1}), -2);

  auto pair = ising_model(LatticeSpec::chain(2, Boundary::Free), 1, 1, {0, 0});
  EXPECT_DOUBLE_EQ(energy(pair, {1, -1}), 1);
  EXPECT_DOUBLE_EQ(energy(pair, {1, 1}), -1);
}

TEST(Model, PeriodicSquareMatchesEdgeList) {
  for (auto lat : {LatticeSpec::square(2, 2), LatticeSpec::square(3, 4), LatticeSpec::chain(5)}) {
    auto m = ising_model(lat, 0.7, 1, {0, 0});
    SplitMix64 rng(lat.volume());
    for (int t = 0; t < 20; ++t) {
      std::vector<double> c(lat.volume());
      for (auto& s : c) s = rng.uniform() < 0.5 ? -1 : 1;
      EXPECT_NEAR(energy(m, c), edge_list_energy(lat, 0.7, c), 1e-12);
    }
  }
}

TEST(Model, TranslationInvariance) {
  auto lat = LatticeSpec::square(3, 4);
  auto m = ising_model(lat, 1.1, 1, {0.3, 0});
  SplitMix64 rng(7);
  std::vector<double> c(lat.volume());
  for (auto& s : c) s = rng.uniform() < 0.5 ? -1 : 1;
  std::vector<int> off{1, 2};
  std::vector<double> shifted(c.size());
  for (int x = 0; x < lat.volume(); ++x) shifted[*lat.shift(x, off)] = c[x];
  EXPECT_NEAR(energy(m, c), energy(m, shifted), 1e-12);
}

TEST(Model, SpinFlipAtZeroField) {
  auto m = ising_model(LatticeSpec::square(3, 3), 0.9, 1, {0, 0});
  SplitMix64 rng(3);
  std::vector<double> c(9), f(9);
  for (int i = 0; i < 9; ++i) {
    c[i] = rng.uniform() < 0.5 ? -1 : 1;
    f[i] = -c[i];
  }
  EXPECT_DOUBLE_EQ(energy(m, c), energy(m, f));
}

TEST(Model, PotentialNorm) {
  EXPECT_EQ(potential_norm(ising_model(LatticeSpec::chain(6), 0, 1, {0, 0})), 0);
  EXPECT_DOUBLE_EQ(potential_norm(ising_model(LatticeSpec::chain(6), 1.3, 1, {0, 0})), 1.3);
  EXPECT_DOUBLE_EQ(potential_norm(ising_model(LatticeSpec::square(4, 4), 0.5, 1, {0, 0})), 1.0);
}

TEST(Model, EffectiveFieldsUniform) {
  auto m = ising_model(LatticeSpec::chain(4), 1, 1, {1, 1});
  for (auto h : effective_fields(m)) EXPECT_EQ(h, Complex(1, 1));
}

TEST(Model, EffectiveFieldsModulated) {
  auto lat = LatticeSpec::chain(4);
  Complex eps(0.1, 0.05);
  auto m = ising_model(lat, 1, 1, {0.5, 0}).with_field(FieldSpec::modulated({0.5, 0}, {{eps, {1}}}));
  auto h = effective_fields(m);
  for (int x = 0; x < 4; ++x) {
    Complex wave = std::exp(Complex(0, 2 * std::numbers::pi * x / 4));
    EXPECT_LT(std::abs(h[x] - (Complex(0.5, 0) + eps * wave)), 1e-15) << x;
  }
}

// Re h_x >= Re h - sum |eps_j| on every site.
TEST(Model, ModulatedFieldLowerBound) {
  auto lat = LatticeSpec::square(4, 3);
  SplitMix64 rng(11);
  for (int t = 0; t < 50; ++t) {
    Complex h(rng.uniform(0.1, 2), rng.uniform(-2, 2));
    auto eps = random_split(rng, 3, 0.9 * h.real());
    std::vector<Perturbation> p;
    double total = 0;
    for (auto e : eps) {
      p.push_back({e, {static_cast<int>(rng.below(4)), static_cast<int>(rng.below(3))}});
      total += std::abs(e);
    }
    auto m = ising_model(lat, 1, 1, h).with_field(FieldSpec::modulated(h, p));
    for (auto hx : effective_fields(m)) EXPECT_GE(hx.real(), h.real() - total - 1e-14);
  }
}

TEST(Model, ConfigRoundTrip) {
  auto m = lylab::tools::random_ferro_model(5, 2, lylab::tools::MeasureChoice::Uniform, 0.7, {0.4, 0.1}, {});
  auto j = model_to_json(m);
  auto back = model_from_json(j);
  EXPECT_EQ(model_hash(back), model_hash(m));
  EXPECT_EQ(model_to_json(back), j);
}

TEST(Model, ConfigRejectsUnknownKeys) {
  auto j = model_to_json(ising_model(LatticeSpec::chain(3), 1, 1, {0.5, 0}));
  j["colour"] = "blue";
  try {
    model_from_json(j);
    FAIL() << "accepted an unknown key";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(Model, ConfigParsesHandWrittenFile) {
  auto j = nlohmann::json::parse(R"({
    "lattice": {"extents": [2, 2], "boundary": "periodic"},
    "measure": {"kind": "ising"},
    "beta": 0.5,
    "couplings": {"kernel": {"pairs": [{"offset": [1, 0], "J": 1}, {"offset": [0, 1], "J": 1}]}},
    "field": {"mode": "uniform", "h": [0.2, 0.1]}
  })");
  auto m = model_from_json(j);
  EXPECT_EQ(m.sites(), 4);
  EXPECT_DOUBLE_EQ(m.beta(), 0.5);
  EXPECT_EQ(m.field().h, Complex(0.2, 0.1));
  EXPECT_DOUBLE_EQ(energy(m, {1, 1, 1, 1}) + 4 * 0.2, -8);
}

TEST(Model, HashDependsOnCouplings) {
  auto a = ising_model(LatticeSpec::chain(4), 1, 1, {0.5, 0});
  auto b = ising_model(LatticeSpec::chain(4), 1.0000001, 1, {0.5, 0});
  EXPECT_EQ(model_hash(a), model_hash(ising_model(LatticeSpec::chain(4), 1, 1, {0.5, 0})));
  EXPECT_NE(model_hash(a), model_hash(b));
}

TEST(Model, RejectsInvalidModels) {
  EXPECT_THROW(ising_model(LatticeSpec::chain(0), 1, 1, {0, 0}), Error);
  EXPECT_THROW(ising_model(LatticeSpec::chain(3), 1, -1, {0, 0}), Error);
}
