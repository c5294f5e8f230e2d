#include "lylab/tools/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lylab::tools {

LatticeSpec random_lattice(SplitMix64& rng, const InstanceShape& shape) {
  Boundary b = shape.allow_free && rng.below(2) ? Boundary::Free : Boundary::Periodic;
  if (shape.allow_square && shape.max_sites >= 4 && rng.below(2)) {
    int lx = 2 + static_cast<int>(rng.below(std::max(1, shape.max_sites / 2 - 1)));
    int ly_max = std::max(2, shape.max_sites / lx);
    int ly = 2 + static_cast<int>(rng.below(ly_max - 1));
    if (lx * ly >= shape.min_sites && lx * ly <= shape.max_sites) return LatticeSpec::square(lx, ly, b);
  }
  int L = shape.min_sites + static_cast<int>(rng.below(shape.max_sites - shape.min_sites + 1));
  return LatticeSpec::chain(L, b);
}

Interaction random_ferro_pairs(SplitMix64& rng, const LatticeSpec& lattice, const InstanceShape& shape) {
  Interaction nn = Interaction::from_kernel(lattice, Kernel::nearest_neighbour(lattice.dimension(), 1.0));
  const int n = lattice.volume();
  Interaction I = Interaction::dense(n);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (nn.pair(x, y) != 0)
        I.set_pair(x, y, nn.pair(x, y) * rng.uniform(shape.j_min, shape.j_max));
      else if (rng.uniform() < shape.long_range_probability)
        I.set_pair(x, y, rng.uniform(0, shape.j_min));
    }
  return I;
}

SingleSpinMeasure measure_for(MeasureChoice choice) {
  switch (choice) {
    case MeasureChoice::Ising: return SingleSpinMeasure::ising();
    case MeasureChoice::Uniform: return SingleSpinMeasure::uniform(-1, 1);
    case MeasureChoice::Quartic: return SingleSpinMeasure::quartic(1, 0);
  }
  return SingleSpinMeasure::ising();
}

SpinModel random_ferro_model(std::uint64_t seed, std::uint64_t index, MeasureChoice measure, double beta, Complex h,
                             const InstanceShape& shape) {
  SplitMix64 rng = SplitMix64::stream(seed, index);
  LatticeSpec lat = random_lattice(rng, shape);
  Interaction I = random_ferro_pairs(rng, lat, shape);
  return SpinModel(lat, measure_for(measure), I, FieldSpec::uniform(h), beta);
}

namespace {

std::vector<std::array<int, 4>> random_quads(SplitMix64& rng, int n, int count) {
  std::vector<std::array<int, 4>> out;
  for (int t = 0; t < count; ++t) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = 0; i < 4; ++i) std::swap(perm[i], perm[i + rng.below(n - i)]);
    std::array<int, 4> q{perm[0], perm[1], perm[2], perm[3]};
    std::sort(q.begin(), q.end());
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  }
  return out;
}

}  // namespace

SpinModel random_quartic_ly_model(std::uint64_t seed, std::uint64_t index, int sites, double beta) {
  SplitMix64 rng = SplitMix64::stream(seed, index);
  const int n = sites;
  Interaction I = Interaction::dense(n);
  std::vector<double> load(static_cast<std::size_t>(n) * n, 0);
  const double jmin = std::numbers::ln2 / (8 * beta);
  for (const auto& q : random_quads(rng, n, 1 + static_cast<int>(rng.below(3)))) {
    double J = jmin * rng.uniform(1.0, 2.0);
    I.add_quartic(q, J);
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) load[q[a] * n + q[b]] += J;
  }
  // pair couplings dominate the four-spin load on every pair
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      double base = load[x * n + y];
      double extra = rng.uniform() < 0.5 ? rng.uniform(0, 0.5) : 0.0;
      if (base + extra > 0) I.set_pair(x, y, base * rng.uniform(1.0, 1.5) + extra);
    }
  return SpinModel(LatticeSpec::chain(n, Boundary::Free), SingleSpinMeasure::ising(), I, FieldSpec::uniform(0), beta);
}

SpinModel random_quartic_model(std::uint64_t seed, std::uint64_t index, int sites, double beta) {
  SplitMix64 rng = SplitMix64::stream(seed, index);
  const int n = sites;
  Interaction I = Interaction::dense(n);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (rng.uniform() < 0.6) I.set_pair(x, y, rng.uniform(-1, 1));
  for (const auto& q : random_quads(rng, n, 1 + static_cast<int>(rng.below(4)))) I.add_quartic(q, rng.uniform(-1, 1));
  return SpinModel(LatticeSpec::chain(n, Boundary::Free), SingleSpinMeasure::ising(), I, FieldSpec::uniform(0), beta);
}

}  // namespace lylab::tools
