#include "lylab/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lylab/error.hpp"

namespace lylab {

int LatticeSpec::volume() const {
  long long v = 1;
  for (int e : extents) v *= e;
  return static_cast<int>(v);
}

void LatticeSpec::validate() const {
  require(!extents.empty(), "lattice needs at least one axis");
  long long v = 1;
  for (int e : extents) {
    require(e >= 1, "lattice extents must be >= 1");
    v *= e;
    if (v > (1LL << 30)) fail(ErrorCode::SizeOverflow, "lattice volume too large");
  }
}

std::vector<int> LatticeSpec::coords(int site) const {
  std::vector<int> c(extents.size());
  for (int a = dimension() - 1; a >= 0; --a) {
    c[a] = site % extents[a];
    site /= extents[a];
  }
  return c;
}

int LatticeSpec::site(std::span<const int> c) const {
  int s = 0;
  for (int a = 0; a < dimension(); ++a) s = s * extents[a] + c[a];
  return s;
}

std::optional<int> LatticeSpec::shift(int s, std::span<const int> offset) const {
  require(static_cast<int>(offset.size()) == dimension(), "offset dimension mismatch");
  auto c = coords(s);
  for (int a = 0; a < dimension(); ++a) {
    int v = c[a] + offset[a];
    if (boundary == Boundary::Periodic) {
      v %= extents[a];
      if (v < 0) v += extents[a];
    } else if (v < 0 || v >= extents[a]) {
      return std::nullopt;
    }
    c[a] = v;
  }
  return site(c);
}

Kernel Kernel::nearest_neighbour(int dimension, double J) {
  Kernel k;
  for (int a = 0; a < dimension; ++a) {
    PairBond b;
    b.offset.assign(dimension, 0);
    b.offset[a] = 1;
    b.J = {J};
    k.pairs.push_back(b);
  }
  return k;
}

Interaction Interaction::dense(int nsites, int components) {
  require(nsites >= 1 && components >= 1, "interaction needs sites and components");
  Interaction I;
  I.nsites_ = nsites;
  I.ncomp_ = components;
  I.pair_.assign(components, std::vector<double>(static_cast<std::size_t>(nsites) * nsites, 0.0));
  return I;
}

Interaction Interaction::from_kernel(const LatticeSpec& lattice, const Kernel& kernel) {
  lattice.validate();
  int ncomp = 1;
  for (const auto& b : kernel.pairs) {
    require(!b.J.empty(), "pair bond needs at least one coupling");
    ncomp = std::max<int>(ncomp, static_cast<int>(b.J.size()));
  }
  Interaction I = dense(lattice.volume(), ncomp);
  for (int x = 0; x < lattice.volume(); ++x) {
    for (const auto& b : kernel.pairs) {
      auto y = lattice.shift(x, b.offset);
      if (!y || *y == x) continue;
      for (std::size_t i = 0; i < b.J.size(); ++i) I.add_pair(x, *y, b.J[i], static_cast<int>(i));
    }
    for (const auto& q : kernel.quartic) {
      std::array<int, 4> s{};
      bool ok = true;
      for (int k = 0; k < 4 && ok; ++k) {
        auto y = lattice.shift(x, q.offsets[k]);
        if (!y) ok = false;
        else s[k] = *y;
      }
      if (!ok) continue;
      std::array<int, 4> sorted = s;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      I.add_quartic(s, q.J);
    }
  }
  I.kernel_ = kernel;
  return I;
}

void Interaction::set_pair(int x, int y, double J, int axis) {
  require(x >= 0 && y >= 0 && x < nsites_ && y < nsites_, "pair site out of range");
  require(axis >= 0 && axis < ncomp_, "pair axis out of range");
  require(x != y, "self-coupling J_xx must be zero");
  require(std::isfinite(J), "coupling must be finite");
  pair_[axis][x * nsites_ + y] = J;
  pair_[axis][y * nsites_ + x] = J;
  kernel_.reset();
}

void Interaction::add_pair(int x, int y, double J, int axis) {
  require(x >= 0 && y >= 0 && x < nsites_ && y < nsites_, "pair site out of range");
  require(axis >= 0 && axis < ncomp_, "pair axis out of range");
  require(x != y, "self-coupling J_xx must be zero");
  pair_[axis][x * nsites_ + y] += J;
  pair_[axis][y * nsites_ + x] += J;
  kernel_.reset();
}

void Interaction::add_quartic(std::array<int, 4> sites, double J) {
  std::array<int, 4> sorted = sites;
  std::sort(sorted.begin(), sorted.end());
  for (int s : sorted) require(s >= 0 && s < nsites_, "quartic site out of range");
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "quartic sites must be distinct");
  require(std::isfinite(J), "coupling must be finite");
  for (auto& q : quartic_) {
    if (q.sites == sorted) {
      q.J += J;
      kernel_.reset();
      return;
    }
  }
  quartic_.push_back({sorted, J});
  kernel_.reset();
}

bool Interaction::ferromagnetic() const {
  for (double J : pair_[0])
    if (J < 0) return false;
  return true;
}

bool Interaction::anisotropy_condition() const {
  for (int x = 0; x < nsites_; ++x)
    for (int y = x + 1; y < nsites_; ++y) {
      double s = 0;
      for (int i = 1; i < ncomp_; ++i) s += std::fabs(pair(x, y, i));
      if (pair(x, y, 0) < s) return false;
    }
  return true;
}

bool Interaction::heisenberg_condition() const {
  if (ncomp_ != 3) return false;
  for (int x = 0; x < nsites_; ++x)
    for (int y = x + 1; y < nsites_; ++y)
      for (int i = 1; i < 3; ++i)
        if (pair(x, y, 0) < std::fabs(pair(x, y, i))) return false;
  return true;
}

bool Interaction::coupled(int x, int y) const {
  for (int i = 0; i < ncomp_; ++i)
    if (pair(x, y, i) != 0) return true;
  return false;
}

void Interaction::validate() const {
  require(nsites_ >= 1, "interaction is empty");
  for (int i = 0; i < ncomp_; ++i)
    for (int x = 0; x < nsites_; ++x) {
      require(pair(x, x, i) == 0, "self-coupling J_xx must be zero");
      for (int y = 0; y < x; ++y) require(pair(x, y, i) == pair(y, x, i), "pair couplings must be symmetric");
    }
}

SpinModel::SpinModel(LatticeSpec lattice, SingleSpinMeasure measure, Interaction interaction, FieldSpec field,
                     double beta)
    : lattice_(std::move(lattice)),
      measure_(std::move(measure)),
      interaction_(std::move(interaction)),
      field_(std::move(field)),
      beta_(beta) {
  validate();
}

void SpinModel::validate() const {
  lattice_.validate();
  interaction_.validate();
  require(std::isfinite(beta_) && beta_ > 0, "beta must be positive");
  require(interaction_.sites() == lattice_.volume(), "interaction size does not match the lattice");
  require(interaction_.components() <= measure_.components(),
          "interaction has more component axes than the measure");
  require(!interaction_.has_quartic() || measure_.components() == 1,
          "quartic terms require one-component spins");
  if (field_.mode == FieldMode::PerSite)
    require(static_cast<int>(field_.per_site.size()) == lattice_.volume(), "per-site field size mismatch");
  if (field_.mode == FieldMode::Modulated) {
    require(lattice_.boundary == Boundary::Periodic, "modulated fields need a periodic lattice");
    for (const auto& p : field_.perturbations)
      require(static_cast<int>(p.mode.size()) == lattice_.dimension(), "perturbation mode dimension mismatch");
  }
  require(static_cast<int>(field_.transverse.size()) <= measure_.components() - 1,
          "too many transverse field components");
}

SpinModel SpinModel::with_field(FieldSpec f) const {
  return SpinModel(lattice_, measure_, interaction_, std::move(f), beta_);
}

SpinModel SpinModel::with_beta(double beta) const {
  return SpinModel(lattice_, measure_, interaction_, field_, beta);
}

SpinModel ising_model(const LatticeSpec& lattice, double J, double beta, Complex h) {
  return SpinModel(lattice, SingleSpinMeasure::ising(),
                   Interaction::from_kernel(lattice, Kernel::nearest_neighbour(lattice.dimension(), J)),
                   FieldSpec::uniform(h), beta);
}

std::vector<double> wave_vector(const LatticeSpec& lattice, std::span<const int> mode) {
  require(static_cast<int>(mode.size()) == lattice.dimension(), "mode dimension mismatch");
  std::vector<double> k(mode.size());
  for (std::size_t a = 0; a < mode.size(); ++a) k[a] = 2 * std::numbers::pi * mode[a] / lattice.extents[a];
  return k;
}

Complex plane_wave(const LatticeSpec& lattice, std::span<const int> mode, int site) {
  require(static_cast<int>(mode.size()) == lattice.dimension(), "mode dimension mismatch");
  auto c = lattice.coords(site);
  // exact phase: reduce n*x mod L before taking the angle
  long double phase = 0;
  for (std::size_t a = 0; a < mode.size(); ++a) {
    long long L = lattice.extents[a];
    long long r = ((static_cast<long long>(mode[a]) * c[a]) % L + L) % L;
    phase += 2 * std::numbers::pi_v<long double> * r / L;
  }
  return {static_cast<double>(std::cos(phase)), static_cast<double>(std::sin(phase))};
}

std::vector<Complex> effective_fields(const SpinModel& model) {
  const auto& f = model.field();
  int n = model.sites();
  switch (f.mode) {
    case FieldMode::Uniform: return std::vector<Complex>(n, f.h);
    case FieldMode::PerSite: return f.per_site;
    case FieldMode::Modulated: {
      std::vector<Complex> h(n, f.h);
      for (const auto& p : f.perturbations)
        for (int x = 0; x < n; ++x) h[x] += p.eps * plane_wave(model.lattice(), p.mode, x);
      return h;
    }
  }
  return {};
}

std::vector<Complex> effective_field_vectors(const SpinModel& model) {
  int n = model.sites(), N = model.components();
  auto h1 = effective_fields(model);
  std::vector<Complex> out(static_cast<std::size_t>(n) * N, Complex(0, 0));
  for (int x = 0; x < n; ++x) {
    out[x * N] = h1[x];
    for (std::size_t i = 0; i < model.field().transverse.size(); ++i) out[x * N + 1 + i] = model.field().transverse[i];
  }
  return out;
}

Complex hamiltonian_value(const SpinModel& model, std::span<const double> config) {
  int n = model.sites(), N = model.components();
  require(static_cast<int>(config.size()) == n * N, "configuration length does not match the lattice");
  const auto& I = model.interaction();
  double pair = 0;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int i = 0; i < I.components(); ++i) pair += I.pair(x, y, i) * config[x * N + i] * config[y * N + i];
  double quartic = 0;
  for (const auto& q : I.quartic())
    quartic += q.J * config[q.sites[0]] * config[q.sites[1]] * config[q.sites[2]] * config[q.sites[3]];
  auto h = effective_field_vectors(model);
  Complex field = 0;
  for (int k = 0; k < n * N; ++k) field += h[k] * config[k];
  return -pair - quartic - field;
}

double potential_norm(const SpinModel& model) {
  const auto& kernel = model.interaction().kernel();
  if (!kernel) fail(ErrorCode::InvalidInput, "potential norm needs a translation-invariant kernel");
  double S = model.measure().support_bound();
  if (!std::isfinite(S)) fail(ErrorCode::Unsupported, "potential norm needs bounded spins");
  // Each bond {0, d} and its mirror {0, -d} contain the origin, each weighted 1/2;
  // each quartic shape has four translates through the origin, each weighted 1/4.
  double norm = 0;
  for (const auto& b : kernel->pairs) {
    double m = 0;
    for (double J : b.J) m = std::max(m, std::fabs(J));
    norm += m * S * S;
  }
  for (const auto& q : kernel->quartic) norm += std::fabs(q.J) * S * S * S * S;
  return norm;
}

}  // namespace lylab
