#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lylab/numeric.hpp"

namespace lylab {

// Rectangular sample grid over complex h: nre x nim points, endpoints included.
struct GridSpec {
  double re0 = 0.05, re1 = 2.0;
  int nre = 41;
  double im0 = -2.0, im1 = 2.0;
  int nim = 41;

  static GridSpec parse(std::string_view text);  // "re0,re1,nre,im0,im1,nim"
  std::string to_string() const;
  std::size_t size() const { return static_cast<std::size_t>(nre) * nim; }
  Complex point(std::size_t index) const;        // row-major in (re, im)
  double re(int i) const;
  double im(int j) const;
};

enum class RegionKind { HalfPlane, Rectangle, Disc, ConeD, OmegaPlus, OmegaMinus };

// Region of field space. Cone D lives in (h, eps_1..eps_n); Omega_N^+ / Omega_N^-
// in (h^1, ..., h^N); the others are subsets of the complex h-plane.
struct RegionSpec {
  RegionKind kind = RegionKind::HalfPlane;
  double re0 = 0, re1 = 0, im0 = 0, im1 = 0;  // rectangle
  Complex center{0, 0};                       // disc
  double radius = 0;
  int n = 0;  // number of perturbations for cone D, or N for Omega

  static RegionSpec half_plane() { return {}; }
  static RegionSpec rectangle(double re0, double re1, double im0, double im1);
  static RegionSpec disc(Complex center, double radius);
  static RegionSpec cone(int modes);
  static RegionSpec omega_plus(int components);
  static RegionSpec omega_minus(int components);
  static RegionSpec parse(std::string_view name);

  bool contains(Complex h) const;
  bool contains(Complex h, std::span<const Complex> eps) const;
  bool contains_vector(std::span<const Complex> hvec) const;
  std::string name() const;
};

// A sample where the normalized modulus dropped below the margin.
struct Witness {
  std::vector<Complex> point;  // h, followed by perturbations or transverse components
  double normalized_modulus = 0;
  bool inside_region = true;
};

struct ScanReport {
  std::string region;
  std::string grid;
  std::size_t points = 0;
  std::size_t points_inside = 0;
  double margin = 1e-8;
  double min_normalized = 0;   // over points inside the region
  std::vector<Complex> argmin; // same layout as Witness::point
  std::vector<Witness> witnesses;
  std::uint64_t model_hash = 0;
  Precision precision = Precision::Double;
  std::vector<std::string> notes;

  // True when no sample inside the region fell below the margin.
  bool passed() const;
  std::size_t inside_failures() const;
};

// Accumulates per-point results in index order.
void scan_record(ScanReport& report, std::vector<Complex> point, double normalized, bool inside);

// k complex numbers with sum of moduli = total: exponential weights, uniform phases.
std::vector<Complex> random_split(SplitMix64& rng, int k, double total);

}  // namespace lylab
