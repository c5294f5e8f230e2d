#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lylab/scan.hpp"

namespace lylab {

// Spin-s matrices with sigma^3 = diag(s, s-1, ..., -s).
struct SpinOperators {
  double s = 0.5;
  std::array<Eigen::MatrixXcd, 3> sigma;

  static SpinOperators make(double s);
  int dimension() const { return static_cast<int>(sigma[0].rows()); }
  // max over (j, k) of |[sigma^j, sigma^k] - i eps_jkl sigma^l|
  double commutator_residual() const;
};

inline constexpr int kMaxQuantumDimension = 4096;

// H = -sum_{x<y} sum_i J^i_xy s^i_x s^i_y - sum_x sum_i h^i_x s^i_x
struct QuantumModel {
  int sites = 1;
  double s = 0.5;
  double beta = 1;
  std::array<Eigen::MatrixXd, 3> J;  // symmetric, zero diagonal
  std::vector<std::array<Complex, 3>> h;

  static QuantumModel make(int sites, double s, double beta);
  // Same coupling vector on every pair.
  static QuantumModel all_to_all(int sites, double s, double beta, std::array<double, 3> J);
  void set_uniform_field(std::array<Complex, 3> field);
  long long dimension() const;
  bool ferromagnetic() const;  // J^1 >= |J^2| and J^1 >= |J^3| on every pair
  void validate() const;
};

Eigen::MatrixXcd quantum_hamiltonian(const QuantumModel& qm);
// FNV-1a of a canonical hex-float JSON rendering.
std::uint64_t quantum_hash(const QuantumModel& qm);

struct QuantumPartition {
  Complex value;
  std::string method;           // "eigen" for real fields, "pade" otherwise
  bool conditioning_warning = false;  // ||beta H|| > 50
};

// (2s+1)^{-|Lambda|} tr exp(-beta H)
QuantumPartition quantum_partition(const QuantumModel& qm);
// Same with J -> J / s^2 and h -> h / s.
QuantumPartition rescaled_partition(const QuantumModel& qm);
QuantumModel rescaled(const QuantumModel& qm);

struct LimitRow {
  double s = 0;
  double sup_deviation = 0;
  double argmax_t = 0;
};

struct LimitStudy {
  std::vector<double> t_grid;
  std::vector<double> classical;  // Z_classical(t)
  std::vector<LimitRow> rows;
  bool nonincreasing = true;      // within slack; flagged, not failed
  std::vector<std::string> flags;
  double first_over_last = 0;     // sup deviation ratio s_min / s_max
};

struct LimitOptions {
  std::vector<double> s_values;   // empty = 1/2, 1, ..., 8
  std::vector<double> t_grid;     // empty = 20 points on [0.1, 2]
  std::array<double, 3> direction{0, 0, 1};  // field = t * direction on every site
  double slack = 1e-12;
  int jobs = 1;
};

// Q^{resc}_s against the classical N = 3 sphere model with the same J and
// real field; sup over the t grid per s.
LimitStudy classical_limit_study(const QuantumModel& base, const LimitOptions& options = {});

struct QuantumScanOptions {
  double margin = 1e-8;
  double transverse_fraction = 0.9;
  int samples_per_point = 1;
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Uniform field (h^1, h^2, h^3) on every site with h^1 from the grid and
// |h^2| + |h^3| = fraction * Re h^1; |Q| normalized by Q at (Re h^1, 0, 0).
ScanReport quantum_zero_scan(const QuantumModel& qm, const GridSpec& grid, const QuantumScanOptions& options = {});

}  // namespace lylab
