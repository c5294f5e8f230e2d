#pragma once

#include <cstdint>

#include "lylab/model.hpp"

namespace lylab::tools {

// Seeded random instances for the suites. Each instance draws from its own
// SplitMix64 stream (seed, index), so a suite is reproducible item by item.

enum class MeasureChoice { Ising, Uniform, Quartic };

struct InstanceShape {
  int max_sites = 12;
  int min_sites = 2;
  bool allow_square = true;
  bool allow_free = true;
  double j_min = 0.1, j_max = 1.5;
  double long_range_probability = 0.1;  // extra ferromagnetic bonds beyond nearest neighbours
};

LatticeSpec random_lattice(SplitMix64& rng, const InstanceShape& shape);

// Nearest-neighbour bonds of the lattice with independent couplings in
// [j_min, j_max], plus sparse long-range bonds in [0, j_min].
Interaction random_ferro_pairs(SplitMix64& rng, const LatticeSpec& lattice, const InstanceShape& shape);

SingleSpinMeasure measure_for(MeasureChoice choice);

SpinModel random_ferro_model(std::uint64_t seed, std::uint64_t index, MeasureChoice measure, double beta, Complex h,
                             const InstanceShape& shape);

// Ising model with pair and four-spin terms satisfying 8 beta J_U >= ln 2 and
// J_xy >= sum_U J_U on every pair.
SpinModel random_quartic_ly_model(std::uint64_t seed, std::uint64_t index, int sites, double beta);

// Pair and four-spin couplings of either sign strength, no LY requirement.
SpinModel random_quartic_model(std::uint64_t seed, std::uint64_t index, int sites, double beta);

}  // namespace lylab::tools
