#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lylab/engine.hpp"
#include "lylab/model.hpp"
#include "lylab/polyengine.hpp"
#include "lylab/roots.hpp"
#include "lylab/scan.hpp"

namespace lylab {

enum class CircleVerdict { Pass, Fail, PreconditionViolated };
std::string_view to_string(CircleVerdict v);

struct CircleReport {
  RootResult roots;
  double max_deviation = 0;  // over root clusters
  double tolerance = 1e-9;
  double palindrome_defect = 0;
  bool preconditions_ok = true;
  std::vector<std::string> precondition_notes;
  CircleVerdict verdict = CircleVerdict::Pass;
  std::uint64_t model_hash = 0;
  Precision precision = Precision::Extended;
};

CircleReport circle_theorem_check(const SpinModel& model, Precision precision = Precision::Extended,
                                  double tolerance = 1e-9, int jobs = 1);
CircleReport circle_theorem_check(const ActivityPolynomial& P, Precision precision = Precision::Extended,
                                  double tolerance = 1e-9);

struct ScanOptions {
  double margin = 1e-8;
  int jobs = 1;
  std::uint64_t seed = 0;
  int samples_per_point = 1;        // perturbation / transverse draws per grid point
  double cone_fraction = 0.8;       // sum |eps| = fraction * Re h
  double transverse_fraction = 0.9; // sum_{i>=2} |h^i| = fraction * Re h^1
  Precision precision = Precision::Double;
  EngineOptions engine;
};

// Half-plane, rectangle and disc regions scan a uniform field h on every site.
// Cone D keeps the model's perturbation modes (or draws region.n random modes)
// and samples eps with sum |eps| = cone_fraction * Re h.
// Normalization: |Z(h, eps)| / |Z(Re h, 0)|.
ScanReport zero_free_scan(const SpinModel& model, const RegionSpec& region, const GridSpec& grid,
                          const ScanOptions& options = {});

// Grid over h^1; transverse components drawn with total modulus
// transverse_fraction * Re h^1. Normalization: |Z(h)| / |Z(Re h^1, 0, ...)|.
ScanReport multi_component_zero_scan(const SpinModel& model, const GridSpec& grid, const ScanOptions& options = {});

struct ConverseOptions {
  std::vector<double> beta_scales{0.25, 0.5, 1.0, 2.0, 4.0};
  int samples = 512;
  std::uint64_t seed = 1;
  double margin = 1e-9;
  Precision precision = Precision::Extended;
  int jobs = 1;
};

struct ConverseResult {
  enum class Kind { Factorization, Violation };
  Kind kind = Kind::Factorization;

  // factorization: log E_X = beta * sum_{x<y} J_xy s_x s_y + constant
  std::vector<PairCoupling> couplings;
  double residual = 0;
  double min_coupling = 0;
  double constant = 0;

  // violation: a zero of the polynomial with every |z_x| <= 1 (one of them strictly inside)
  std::vector<ComplexLD> witness;
  double witness_scale = 1;  // coefficients were raised to this power (beta multiplier)
  double witness_modulus = 0;
  std::string witness_kind;

  std::vector<double> scales_checked;
  std::vector<std::string> notes;
};

ConverseResult converse_probe(const ActivityPolynomial& P, const ConverseOptions& options = {});

}  // namespace lylab
