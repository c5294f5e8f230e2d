#include "lylab/measures.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lylab/error.hpp"

namespace lylab {

namespace {

constexpr double kTailLog = 41.446531673892822;  // -log(1e-18)

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)}); }

Symmetry detect_atom_symmetry(const std::vector<Atom>& atoms) {
  bool even = true, odd = true;
  for (const auto& a : atoms) {
    bool found_even = false, found_odd = false;
    for (const auto& b : atoms) {
      if (!close(a.location, -b.location)) continue;
      if (close(a.weight, b.weight)) found_even = true;
      if (close(a.weight, -b.weight)) found_odd = true;
    }
    even = even && found_even;
    odd = odd && found_odd;
  }
  if (even) return Symmetry::Even;
  if (odd) return Symmetry::Odd;
  return Symmetry::None;
}

double quartic_raw(double a, double b, double s) { return std::exp(-a * s * s * s * s - b * s * s); }

}  // namespace

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Even: return "even";
    case Symmetry::Odd: return "odd";
    case Symmetry::None: return "none";
  }
  return "none";
}

Symmetry parse_symmetry(std::string_view text) {
  if (text == "even") return Symmetry::Even;
  if (text == "odd") return Symmetry::Odd;
  if (text == "none") return Symmetry::None;
  fail(ErrorCode::InvalidInput, "unknown symmetry '" + std::string(text) + "'");
}

SingleSpinMeasure SingleSpinMeasure::ising() { return atoms({{1.0, 0.5}, {-1.0, 0.5}}, Symmetry::Even); }

SingleSpinMeasure SingleSpinMeasure::atoms(std::vector<Atom> atoms, std::optional<Symmetry> declared) {
  require(!atoms.empty(), "atom list is empty");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    require(std::isfinite(atoms[i].location) && std::isfinite(atoms[i].weight), "atom values must be finite");
    for (std::size_t j = 0; j < i; ++j)
      require(atoms[i].location != atoms[j].location, "atom locations must be distinct");
  }
  SingleSpinMeasure m;
  m.kind_ = MeasureKind::Atoms;
  m.atoms_ = std::move(atoms);
  m.mass_ = 0;
  for (const auto& a : m.atoms_) m.mass_ += a.weight;
  Symmetry found = detect_atom_symmetry(m.atoms_);
  if (declared && *declared != Symmetry::None)
    require(*declared == found, "declared symmetry '" + to_string(*declared) + "' does not hold for the atoms");
  m.symmetry_ = declared ? *declared : found;
  return m;
}

SingleSpinMeasure SingleSpinMeasure::uniform(double lo, double hi, double mass, int order) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "uniform density needs a finite interval lo < hi");
  require(order >= 2, "density quadrature order must be >= 2");
  SingleSpinMeasure m;
  m.kind_ = MeasureKind::Density;
  m.tag_ = DensityTag::Uniform;
  m.lo_ = lo;
  m.hi_ = hi;
  m.mass_ = mass;
  m.raw_mass_ = hi - lo;
  m.order_ = order;
  m.symmetry_ = close(lo, -hi) ? Symmetry::Even : Symmetry::None;
  return m;
}

SingleSpinMeasure SingleSpinMeasure::quartic(double a, double b, int order) {
  require(a > 0 && std::isfinite(a) && std::isfinite(b), "quartic density needs a > 0");
  require(order >= 2, "density quadrature order must be >= 2");
  SingleSpinMeasure m;
  m.kind_ = MeasureKind::Density;
  m.tag_ = DensityTag::Quartic;
  m.a_ = a;
  m.b_ = b;
  m.order_ = order;
  m.symmetry_ = Symmetry::Even;
  m.raw_mass_ = 1;
  double L = m.truncation(0);
  GaussRule g = gauss_legendre(256);
  long double raw = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) raw += g.weights[i] * L * quartic_raw(a, b, L * g.nodes[i]);
  m.raw_mass_ = static_cast<double>(raw);
  m.mass_ = 1;
  return m;
}

SingleSpinMeasure SingleSpinMeasure::sphere_uniform(int dimension, int order) {
  require(dimension >= 2, "sphere dimension must be >= 2");
  SingleSpinMeasure m;
  m.kind_ = MeasureKind::SphereUniform;
  m.dimension_ = dimension;
  m.order_ = order > 0 ? order : 64;
  m.symmetry_ = Symmetry::Even;
  m.lo_ = -1;
  m.hi_ = 1;
  return m;
}

bool SingleSpinMeasure::is_ising() const {
  if (kind_ != MeasureKind::Atoms || atoms_.size() != 2) return false;
  return (atoms_[0].location == 1 && atoms_[1].location == -1) ||
         (atoms_[0].location == -1 && atoms_[1].location == 1);
}

double SingleSpinMeasure::support_bound() const {
  switch (kind_) {
    case MeasureKind::Atoms: {
      double s = 0;
      for (const auto& a : atoms_) s = std::max(s, std::fabs(a.location));
      return s;
    }
    case MeasureKind::Density:
      if (tag_ == DensityTag::Quartic) return std::numeric_limits<double>::infinity();
      return std::max(std::fabs(lo_), std::fabs(hi_));
    case MeasureKind::SphereUniform: return 1.0;
  }
  return 0;
}

double SingleSpinMeasure::density(double s) const {
  if (kind_ != MeasureKind::Density) fail(ErrorCode::Unsupported, "density() needs a density measure");
  if (tag_ == DensityTag::Uniform) return (s >= lo_ && s <= hi_) ? mass_ / raw_mass_ : 0.0;
  return mass_ * quartic_raw(a_, b_, s) / raw_mass_;
}

double SingleSpinMeasure::truncation(double re_h_bound, double quadratic) const {
  if (kind_ != MeasureKind::Density || tag_ != DensityTag::Quartic) return support_bound();
  double q = std::fabs(b_) + std::max(0.0, quadratic), r = std::fabs(re_h_bound);
  auto f = [&](double L) { return -a_ * L * L * L * L + q * L * L + r * L + kTailLog; };
  auto df = [&](double L) { return -4 * a_ * L * L * L + 2 * q * L + r; };
  double L = 0.5, step = 0.5;
  while (!(f(L) < 0 && df(L) < 0)) {
    L += step;
    if (L > 1e6) fail(ErrorCode::QuadratureNonConvergence, "quartic truncation did not converge");
  }
  double lo = L - step, hi = L;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) < 0 && df(mid) < 0) hi = mid;
    else lo = mid;
  }
  return hi;
}

std::string SingleSpinMeasure::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case MeasureKind::Atoms: os << "atoms(" << atoms_.size() << ")"; break;
    case MeasureKind::Density:
      if (tag_ == DensityTag::Uniform) os << "uniform[" << lo_ << "," << hi_ << "]";
      else os << "quartic(" << a_ << "," << b_ << ")";
      break;
    case MeasureKind::SphereUniform: os << "sphere(" << dimension_ << ")"; break;
  }
  return os.str();
}

namespace {

std::vector<QuadratureNode> density_rule(const SingleSpinMeasure& m, int order, double re_h, double quad) {
  double lo = m.lo(), hi = m.hi();
  if (m.density_tag() == DensityTag::Quartic) {
    double L = m.truncation(re_h, quad);
    lo = -L;
    hi = L;
  }
  GaussRule g = gauss_legendre(order);
  double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  std::vector<QuadratureNode> out(order);
  for (int i = 0; i < order; ++i) {
    double x = static_cast<double>(mid + half * g.nodes[i]);
    out[i] = {x, static_cast<double>(g.weights[i] * half) * m.density(x)};
  }
  return out;
}

std::vector<QuadratureNode> sphere_rule(const SingleSpinMeasure& m, int order) {
  GaussRule g = gauss_gegenbauer(order, 0.5 * (m.dimension() - 3));
  std::vector<QuadratureNode> out(order);
  for (int i = 0; i < order; ++i) out[i] = {static_cast<double>(g.nodes[i]), static_cast<double>(g.weights[i])};
  return out;
}

ComplexLD integrate(const std::vector<QuadratureNode>& rule, Complex h) {
  ComplexLD s = 0;
  ComplexLD hl(h.real(), h.imag());
  for (const auto& q : rule) s += static_cast<long double>(q.weight) * std::exp(hl * static_cast<long double>(q.node));
  return s;
}

}  // namespace

std::vector<QuadratureNode> quadrature_rule(const SingleSpinMeasure& m, int order, double re_h_bound,
                                            double quadratic) {
  require(order >= 1, "quadrature order must be >= 1");
  switch (m.kind()) {
    case MeasureKind::Atoms: fail(ErrorCode::Unsupported, "atoms have no quadrature rule; use atom_nodes");
    case MeasureKind::Density: return density_rule(m, order, re_h_bound, quadratic);
    case MeasureKind::SphereUniform: return sphere_rule(m, order);
  }
  return {};
}

std::vector<QuadratureNode> atom_nodes(const SingleSpinMeasure& m) {
  if (m.kind() != MeasureKind::Atoms) fail(ErrorCode::Unsupported, "measure has no atoms");
  std::vector<QuadratureNode> out;
  for (const auto& a : m.atom_list()) out.push_back({a.location, a.weight});
  return out;
}

LaplaceValue laplace_transform(const SingleSpinMeasure& m, Complex h, double tol) {
  if (m.kind() == MeasureKind::Atoms) {
    ComplexLD s = 0;
    ComplexLD hl(h.real(), h.imag());
    for (const auto& a : m.atom_list())
      s += static_cast<long double>(a.weight) * std::exp(hl * static_cast<long double>(a.location));
    return {Complex(static_cast<double>(s.real()), static_cast<double>(s.imag())), 0.0};
  }
  int order = m.order();
  auto coarse_rule = quadrature_rule(m, order, h.real());
  auto fine_rule = quadrature_rule(m, 2 * order, h.real());
  ComplexLD coarse = integrate(coarse_rule, h), fine = integrate(fine_rule, h);
  // scale: integral of |e^{h s}| d|mu_0|
  long double scale = 0;
  for (const auto& q : fine_rule)
    scale += std::fabs(static_cast<long double>(q.weight)) * std::exp(static_cast<long double>(h.real() * q.node));
  double err = static_cast<double>(std::abs(fine - coarse) / std::max(scale, 1e-300L));
  Complex value(static_cast<double>(fine.real()), static_cast<double>(fine.imag()));
  if (!(err <= tol))
    throw QuadratureError("laplace transform did not converge under order doubling", std::abs(Complex(
        static_cast<double>(coarse.real()), static_cast<double>(coarse.imag()))), std::abs(value));
  return {value, err};
}

ScanReport verify_ly_condition(const SingleSpinMeasure& m, const RegionSpec& region, const GridSpec& grid,
                               double margin, int jobs) {
  require(region.kind == RegionKind::HalfPlane || region.kind == RegionKind::Rectangle,
          "single-spin condition is checked on the half-plane or a sub-rectangle");
  ScanReport report;
  report.region = region.name();
  report.grid = grid.to_string();
  report.margin = margin;
  std::vector<double> values(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) { values[i] = std::abs(laplace_transform(m, grid.point(i)).value); });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Complex h = grid.point(i);
    scan_record(report, {h}, values[i], region.contains(h));
  }
  return report;
}

}  // namespace lylab
