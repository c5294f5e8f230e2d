#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lylab/numeric.hpp"
#include "lylab/scan.hpp"

namespace lylab {

struct Atom {
  double location;
  double weight;
};

enum class Symmetry { Even, Odd, None };
enum class MeasureKind { Atoms, Density, SphereUniform };
enum class DensityTag { Uniform, Quartic };

struct QuadratureNode {
  double node;
  double weight;
};

class SingleSpinMeasure {
 public:
  // (delta_1 + delta_-1) / 2
  static SingleSpinMeasure ising();
  // Symmetry is detected when not declared, verified when declared.
  static SingleSpinMeasure atoms(std::vector<Atom> atoms, std::optional<Symmetry> declared = {});
  static SingleSpinMeasure uniform(double lo, double hi, double mass = 1.0, int order = 64);
  // Probability density proportional to exp(-a s^4 - b s^2), a > 0.
  static SingleSpinMeasure quartic(double a, double b, int order = 64);
  // Uniform probability on the unit sphere in R^N.
  static SingleSpinMeasure sphere_uniform(int dimension, int order = 0);

  MeasureKind kind() const { return kind_; }
  DensityTag density_tag() const { return tag_; }
  Symmetry symmetry() const { return symmetry_; }
  double normalization() const { return mass_; }
  int components() const { return kind_ == MeasureKind::SphereUniform ? dimension_ : 1; }
  int dimension() const { return dimension_; }
  int order() const { return order_; }
  const std::vector<Atom>& atom_list() const { return atoms_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double quartic_a() const { return a_; }
  double quartic_b() const { return b_; }

  // Two atoms at +1 and -1 (any weights).
  bool is_ising() const;
  bool bounded() const { return !(kind_ == MeasureKind::Density && tag_ == DensityTag::Quartic); }
  // sup |sigma| over the support; +inf for the quartic density.
  double support_bound() const;
  // Density of the measure (mass included); Density kind only.
  double density(double sigma) const;
  // Half-width L of the quartic integration window, so that
  // exp(-a L^4 + (|b| + quadratic) L^2 + |Re h| L) < 1e-18.
  double truncation(double re_h_bound, double quadratic = 0) const;

  std::string describe() const;

 private:
  MeasureKind kind_ = MeasureKind::Atoms;
  DensityTag tag_ = DensityTag::Uniform;
  Symmetry symmetry_ = Symmetry::None;
  double mass_ = 1;
  std::vector<Atom> atoms_;
  double lo_ = -1, hi_ = 1;
  double a_ = 0, b_ = 0;
  double raw_mass_ = 1;
  int order_ = 64;
  int dimension_ = 1;
};

struct LaplaceValue {
  Complex value;
  double rel_error = 0;  // estimate relative to the integral of |e^{h s}|
};

// Integral of e^{h s} d mu_0(s); the sphere uses its 1-axis marginal.
LaplaceValue laplace_transform(const SingleSpinMeasure& m, Complex h, double tol = 1e-10);

// Quadrature for the density (or the sphere marginal); integrates f d mu_0.
// The quartic window uses the truncation for the given field and quadratic bounds.
std::vector<QuadratureNode> quadrature_rule(const SingleSpinMeasure& m, int order,
                                            double re_h_bound = 0, double quadratic = 0);
std::vector<QuadratureNode> atom_nodes(const SingleSpinMeasure& m);

ScanReport verify_ly_condition(const SingleSpinMeasure& m, const RegionSpec& region,
                               const GridSpec& grid, double margin = 1e-8, int jobs = 1);

std::string to_string(Symmetry s);
Symmetry parse_symmetry(std::string_view text);

}  // namespace lylab
