#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lylab/measures.hpp"
#include "lylab/numeric.hpp"

namespace lylab {

enum class Boundary { Periodic, Free };

struct LatticeSpec {
  std::vector<int> extents{1};
  Boundary boundary = Boundary::Periodic;

  static LatticeSpec chain(int length, Boundary b = Boundary::Periodic) { return {{length}, b}; }
  static LatticeSpec square(int lx, int ly, Boundary b = Boundary::Periodic) { return {{lx, ly}, b}; }

  int dimension() const { return static_cast<int>(extents.size()); }
  int volume() const;
  std::vector<int> coords(int site) const;  // row-major: last axis fastest
  int site(std::span<const int> coords) const;
  // Site at x + offset; nullopt when it leaves a free lattice.
  std::optional<int> shift(int site, std::span<const int> offset) const;
  void validate() const;
};

// Translation-invariant couplings: each pair bond joins x and x + offset,
// each quartic shape joins x + offsets[0..3].
struct PairBond {
  std::vector<int> offset;
  std::vector<double> J;  // one entry per component axis
};

struct QuarticShape {
  std::array<std::vector<int>, 4> offsets;
  double J = 0;
};

struct Kernel {
  std::vector<PairBond> pairs;
  std::vector<QuarticShape> quartic;

  // Nearest-neighbour bonds along every axis with the same coupling.
  static Kernel nearest_neighbour(int dimension, double J);
};

struct QuarticTerm {
  std::array<int, 4> sites;
  double J = 0;
};

class Interaction {
 public:
  Interaction() = default;
  static Interaction dense(int nsites, int components = 1);
  // Wrapped bonds on periodic lattices are summed, so an axis of length <= 2
  // carries a doubled coupling; bonds from a site to itself are dropped.
  static Interaction from_kernel(const LatticeSpec& lattice, const Kernel& kernel);

  int sites() const { return nsites_; }
  int components() const { return ncomp_; }
  void set_pair(int x, int y, double J, int axis = 0);
  void add_pair(int x, int y, double J, int axis = 0);
  double pair(int x, int y, int axis = 0) const { return pair_[axis][x * nsites_ + y]; }
  // Sites distinct; terms on the same 4-set are merged.
  void add_quartic(std::array<int, 4> sites, double J);
  const std::vector<QuarticTerm>& quartic() const { return quartic_; }
  const std::optional<Kernel>& kernel() const { return kernel_; }

  bool ferromagnetic() const;          // all axis-0 pair couplings >= 0
  bool anisotropy_condition() const;   // J^1 >= sum_{i>=2} |J^i| on every pair
  bool heisenberg_condition() const;   // N = 3 and J^1 >= max_i |J^i|
  bool has_quartic() const { return !quartic_.empty(); }
  bool coupled(int x, int y) const;    // any axis nonzero
  void validate() const;

 private:
  int nsites_ = 0;
  int ncomp_ = 1;
  std::vector<std::vector<double>> pair_;
  std::vector<QuarticTerm> quartic_;
  std::optional<Kernel> kernel_;
};

// Plane-wave field perturbation eps * exp(i k.x) with k = 2 pi mode / L.
struct Perturbation {
  Complex eps{0, 0};
  std::vector<int> mode;
};

enum class FieldMode { Uniform, PerSite, Modulated };

struct FieldSpec {
  FieldMode mode = FieldMode::Uniform;
  Complex h{0, 0};
  std::vector<Complex> per_site;
  std::vector<Perturbation> perturbations;
  std::vector<Complex> transverse;  // uniform components 2..N

  static FieldSpec uniform(Complex h) { return {FieldMode::Uniform, h, {}, {}, {}}; }
  static FieldSpec site_fields(std::vector<Complex> h) { return {FieldMode::PerSite, {}, std::move(h), {}, {}}; }
  static FieldSpec modulated(Complex h, std::vector<Perturbation> p) {
    return {FieldMode::Modulated, h, {}, std::move(p), {}};
  }
};

class SpinModel {
 public:
  SpinModel(LatticeSpec lattice, SingleSpinMeasure measure, Interaction interaction, FieldSpec field,
            double beta);

  const LatticeSpec& lattice() const { return lattice_; }
  const SingleSpinMeasure& measure() const { return measure_; }
  const Interaction& interaction() const { return interaction_; }
  const FieldSpec& field() const { return field_; }
  double beta() const { return beta_; }
  int components() const { return measure_.components(); }
  int sites() const { return lattice_.volume(); }

  SpinModel with_field(FieldSpec f) const;
  SpinModel with_beta(double beta) const;

 private:
  void validate() const;
  LatticeSpec lattice_;
  SingleSpinMeasure measure_;
  Interaction interaction_;
  FieldSpec field_;
  double beta_;
};

// Nearest-neighbour Ising model with uniform field.
SpinModel ising_model(const LatticeSpec& lattice, double J, double beta, Complex h);

// Real wave vector of a mode on the lattice (periodic only).
std::vector<double> wave_vector(const LatticeSpec& lattice, std::span<const int> mode);
Complex plane_wave(const LatticeSpec& lattice, std::span<const int> mode, int site);

// h_x along axis 1.
std::vector<Complex> effective_fields(const SpinModel& model);
// All components, site-major: entry x * N + i.
std::vector<Complex> effective_field_vectors(const SpinModel& model);

// config: site-major spin components, length |Lambda| * N.
Complex hamiltonian_value(const SpinModel& model, std::span<const double> config);

double potential_norm(const SpinModel& model);

std::uint64_t model_hash(const SpinModel& model);

}  // namespace lylab
