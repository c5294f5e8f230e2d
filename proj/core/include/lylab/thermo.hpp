#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lylab/correlations.hpp"
#include "lylab/model.hpp"

namespace lylab {

// Row-to-row operator of a ring (1D chain) or a 2D strip whose rows run along
// axis 0. States enumerate atom configurations of one cross-section, last site
// fastest. The matrix is in symmetric split form
//   T_ab = sqrt(w_a w_b) exp(beta (E_row(a)/2 + E_row(b)/2 + E_link(a, b)))
// with atom weights divided by the smallest one; log_weight_offset restores
// them, so Z_ring(L) = exp(L * log_weight_offset) tr T^L.
struct TransferOperator {
  int width = 1;
  int states_per_site = 2;
  double beta = 1;
  Complex h{0, 0};
  double log_weight_offset = 0;
  Eigen::MatrixXcd matrix;
  std::vector<double> row_spin;    // sigma at cross-section site 0, per state
  std::vector<Complex> eigenvalues;  // by modulus, ties broken by argument
  Eigen::VectorXcd v1, v2;           // right eigenvectors of lambda_1, lambda_2

  int dimension() const { return static_cast<int>(matrix.rows()); }
  double gap_ratio() const;  // |lambda_2| / |lambda_1|
};

inline constexpr int kMaxTransferWidth = 8;
inline constexpr int kMaxTransferStates = 4096;

// The model's lattice must have at least 3 rows so that row-to-row couplings
// are unambiguous; its couplings and fields must be row-translation invariant.
TransferOperator build_transfer(const SpinModel& model);
TransferOperator build_transfer(const SpinModel& model, Complex h);

// log tr T^L including the weight offset, scaled to avoid overflow.
ComplexLD log_ring_partition(const TransferOperator& T, int L);

// Ising strip of the given width (1 = chain) with 3 rows, nearest-neighbour J,
// periodic in both directions.
SpinModel ising_strip(int width, double J, double beta, Complex h);

struct FreeEnergy {
  Complex f_inf;
  std::vector<int> L;
  std::vector<Complex> f_L;
  double observed_rate = 0;  // fitted decay of L |f_L - f_inf|
  double predicted_rate = 0; // |lambda_2| / |lambda_1|
};

// Free energies count atoms relative to the lightest one (plain spin sums for
// +-1 spins), i.e. without log_weight_offset.
// Throws EigenvalueCrossing when |lambda_2| / |lambda_1| > 1 - 1e-8.
FreeEnergy free_energy_density(const TransferOperator& T, int max_L = 40);

struct MassGap {
  double m = 0;
  bool infinite = false;  // lambda_2 == 0: correlations vanish beyond one row
  double ratio = 0;
};

MassGap mass_gap(const TransferOperator& T);

struct MassGapFit {
  double m = 0;
  int x0 = 3, x1 = 12, ring = 96;
  std::vector<double> correlation;  // |<s_0; s_x>| for x = 0..x1
  double spectral = 0;
  double discrepancy = 0;  // relative, against the spectral route
};

// Regression of -log|<s_0; s_x>^c| on x in [x0, x1] on a ring of length
// ring_length (0 = 8 * x1), computed from trace products in quad precision.
MassGapFit mass_gap_fit(const SpinModel& model, Complex h, int x0 = 3, int x1 = 12, int ring_length = 0);

// Infinite-volume magnetization per site and two h-derivatives, from Cauchy
// contour coefficients of log lambda_1 around h (radius min(h/2, 1/2)).
struct LimitMagnetization {
  double h = 0;
  double m = 0, dm = 0, d2m = 0;
};

LimitMagnetization limit_magnetization(const SpinModel& model, double h, int nodes = 64);

struct RStudyRow {
  int L = 0;
  Complex h;
  std::vector<Complex> eps;
  Complex R;
  double abs_R = 0;
  double bound = 0;  // exp(beta c(h, eps))
  bool alarm = false;
};

struct RStudyPoint {
  Complex h;
  std::vector<Complex> eps;  // one per mode
};

struct RStudy {
  std::vector<RStudyRow> rows;
  std::vector<int> lengths;
  std::vector<double> sup_abs_R;  // per length
  std::vector<std::vector<int>> modes;
  double limit_R = 0;             // transfer-matrix |lambda_1| limit at the first grid point with eps = 0, if any
  bool bounded = true;
  bool zero_alarm = false;
  double stability = 0;           // (max - min) / max of sup_abs_R over the lengths
};

// Compact cone grid: Re h in [re0, re1], Im h in [im0, im1], eps on the given
// modes with sum |eps| = fraction * Re h and seeded phases.
std::vector<RStudyPoint> cone_grid(const std::vector<std::vector<int>>& modes, double re0, double re1, int nre,
                                   double im0, double im1, int nim, double fraction, int phase_samples,
                                   std::uint64_t seed);

// Rings of the given lengths with nearest-neighbour coupling J.
RStudy r_function_study(double J, double beta, const std::vector<int>& lengths,
                        const std::vector<std::vector<int>>& modes, const std::vector<RStudyPoint>& grid,
                        double alarm_margin = 1e-12);

struct BcRow {
  int L = 0;
  Complex free_value, periodic_value;
  double difference = 0;
};

struct BcReport {
  Complex h;
  std::vector<BcRow> rows;
  double rate = 0;        // fitted geometric ratio per unit L
  bool monotone = false;  // differences strictly decreasing (or identically zero)
  double final_gap = 0;
};

// <s_c; s_{c+x}> on free chains (c = (L - x - 1) / 2, centred) and on rings.
BcReport bc_independence_check(double J, double beta, Complex h, const std::vector<int>& lengths, int x = 1);

struct DeltaFit {
  int width = 0;
  std::vector<double> h, xi;
  double slope = 0;  // d log xi / d log h
};

struct DeltaProbe {
  double beta = 0;
  std::vector<DeltaFit> fits;
  bool slope_trend_monotone = false;
  double reference_delta = 1;  // the bound delta <= 1, emitted without assertion
  std::string note;
};

DeltaProbe critical_exponent_probe(double J, double beta, const std::vector<int>& widths,
                                   const std::vector<double>& h_sequence);

}  // namespace lylab
