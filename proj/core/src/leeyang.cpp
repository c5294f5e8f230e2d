#include "lylab/leeyang.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lylab/config.hpp"
#include "lylab/error.hpp"

namespace lylab {

std::string_view to_string(CircleVerdict v) {
  switch (v) {
    case CircleVerdict::Pass: return "pass";
    case CircleVerdict::Fail: return "fail";
    case CircleVerdict::PreconditionViolated: return "precondition-violated";
  }
  return "?";
}

namespace {

void finish_circle(CircleReport& r, const ActivityPolynomial& P, Precision precision, double tolerance) {
  std::vector<Quad> a = P.uniform_reduction();
  r.roots = roots_activity(a, precision);
  r.max_deviation = r.roots.max_circle_deviation();
  r.tolerance = tolerance;
  r.precision = precision;
  r.palindrome_defect = P.symmetry_defect();
  if (!r.roots.converged) r.precondition_notes.push_back("root refinement did not reach the residual target");
  if (!r.preconditions_ok) r.verdict = CircleVerdict::PreconditionViolated;
  else r.verdict = r.max_deviation < tolerance ? CircleVerdict::Pass : CircleVerdict::Fail;
}

}  // namespace

CircleReport circle_theorem_check(const SpinModel& model, Precision precision, double tolerance, int jobs) {
  CircleReport r;
  const auto& m = model.measure();
  if (!m.is_ising()) fail(ErrorCode::InvalidInput, "circle check needs the +-1 Ising measure");
  if (m.symmetry() != Symmetry::Even) {
    r.preconditions_ok = false;
    r.precondition_notes.push_back("measure is not spin-flip symmetric");
  }
  if (!model.interaction().ferromagnetic()) {
    r.preconditions_ok = false;
    r.precondition_notes.push_back("pair couplings are not ferromagnetic");
  }
  if (model.interaction().has_quartic()) {
    auto c = check_quartic_ly_conditions(model);
    if (!c.both()) {
      r.preconditions_ok = false;
      for (auto& f : c.failures) r.precondition_notes.push_back("four-spin condition: " + f);
    }
  }
  ActivityPolynomial P = partition_polynomial(model, jobs);
  r.model_hash = P.model_hash;
  finish_circle(r, P, precision, tolerance);
  return r;
}

CircleReport circle_theorem_check(const ActivityPolynomial& P, Precision precision, double tolerance) {
  CircleReport r;
  r.model_hash = P.model_hash;
  if (P.symmetry_defect() > 1e-12) {
    r.preconditions_ok = false;
    r.precondition_notes.push_back("coefficients are not complement-symmetric");
  }
  finish_circle(r, P, precision, tolerance);
  return r;
}

namespace {

std::vector<Complex> uniform_axis1(const std::vector<Complex>& base, int n, int N, Complex h) {
  std::vector<Complex> f = base;
  for (int x = 0; x < n; ++x) f[x * N] = h;
  return f;
}

// Random split of `total` into k nonnegative parts, each with a random phase.
double grid_field_bound(const GridSpec& g, double extra) {
  return std::max(std::fabs(g.re0), std::fabs(g.re1)) * (1 + extra);
}

}  // namespace

ScanReport zero_free_scan(const SpinModel& model, const RegionSpec& region, const GridSpec& grid,
                          const ScanOptions& options) {
  const int n = model.sites(), N = model.components();
  EngineOptions eo = options.engine;
  bool cone = region.kind == RegionKind::ConeD;
  if (eo.field_bound < 0) eo.field_bound = grid_field_bound(grid, cone ? options.cone_fraction : 0.0);
  PartitionEngine engine(model, eo);
  std::vector<Complex> base = engine.model_fields();
  for (int x = 0; x < n; ++x) base[x * N] = 0;

  ScanReport report;
  report.region = region.name();
  report.grid = grid.to_string();
  report.margin = options.margin;
  report.model_hash = model_hash(model);
  report.precision = options.precision;

  // reference |Z(Re h)| per grid column
  std::vector<double> ref(grid.nre);
  parallel_for(grid.nre, options.jobs, [&](std::size_t i) {
    auto f = uniform_axis1(base, n, N, Complex(grid.re(static_cast<int>(i)), 0));
    ref[i] = std::abs(engine.evaluate(options.precision, f));
  });

  std::vector<std::vector<int>> modes;
  if (cone) {
    require(model.lattice().boundary == Boundary::Periodic, "cone scans need a periodic lattice");
    for (const auto& p : model.field().perturbations) modes.push_back(p.mode);
    if (modes.empty()) {
      SplitMix64 rng = SplitMix64::stream(options.seed, 0xc0de);
      for (int a = 0; a < std::max(region.n, 1); ++a) {
        std::vector<int> m(model.lattice().dimension());
        for (int d = 0; d < model.lattice().dimension(); ++d)
          m[d] = static_cast<int>(rng.below(static_cast<std::uint64_t>(model.lattice().extents[d])));
        modes.push_back(m);
      }
    }
    report.notes.push_back("cone samples: sum |eps| = " + std::to_string(options.cone_fraction) + " * Re h");
  }
  const int per = cone ? std::max(1, options.samples_per_point) : 1;
  const std::size_t total = grid.size() * per;
  std::vector<std::vector<Complex>> points(total);
  std::vector<double> values(total);
  std::vector<char> inside(total);
  parallel_for(total, options.jobs, [&](std::size_t t) {
    std::size_t gi = t / per;
    Complex h = grid.point(gi);
    int col = static_cast<int>(gi / grid.nim);
    std::vector<Complex> f = uniform_axis1(base, n, N, h);
    std::vector<Complex> point{h};
    bool in = region.contains(h);
    if (cone) {
      SplitMix64 rng = SplitMix64::stream(options.seed, t);
      auto eps = random_split(rng, static_cast<int>(modes.size()), options.cone_fraction * std::max(h.real(), 0.0));
      for (std::size_t a = 0; a < modes.size(); ++a) {
        for (int x = 0; x < n; ++x) f[x * N] += eps[a] * plane_wave(model.lattice(), modes[a], x);
        point.push_back(eps[a]);
      }
      in = region.contains(h, std::span<const Complex>(point).subspan(1));
    }
    Complex z = engine.evaluate(options.precision, f);
    values[t] = ref[col] > 0 ? std::abs(z) / ref[col] : std::abs(z);
    points[t] = std::move(point);
    inside[t] = in;
  });
  for (std::size_t t = 0; t < total; ++t) scan_record(report, std::move(points[t]), values[t], inside[t] != 0);
  return report;
}

ScanReport multi_component_zero_scan(const SpinModel& model, const GridSpec& grid, const ScanOptions& options) {
  const int n = model.sites(), N = model.components();
  require(N >= 2, "multi-component scan needs N >= 2");
  if (model.measure().kind() != MeasureKind::SphereUniform)
    fail(ErrorCode::InvalidInput, "multi-component scan needs the rotation-invariant sphere measure");
  if (n > 4) fail(ErrorCode::SizeOverflow, "continuous-spin multi-component scans are limited to 4 sites");
  RegionSpec region = RegionSpec::omega_plus(N);
  ScanReport report;
  report.region = region.name();
  report.grid = grid.to_string();
  report.margin = options.margin;
  report.model_hash = model_hash(model);
  report.precision = options.precision;
  const auto& I = model.interaction();
  if (!I.anisotropy_condition() && !I.heisenberg_condition())
    report.notes.push_back("precondition violated: neither the anisotropy nor the Heisenberg condition holds");
  else if (!I.anisotropy_condition())
    report.notes.push_back("anisotropy condition fails; Heisenberg condition holds");

  EngineOptions eo = options.engine;
  if (eo.field_bound < 0) eo.field_bound = grid_field_bound(grid, options.transverse_fraction);
  PartitionEngine engine(model, eo);
  auto field_at = [&](const std::vector<Complex>& hvec) {
    std::vector<Complex> f(static_cast<std::size_t>(n) * N);
    for (int x = 0; x < n; ++x)
      for (int i = 0; i < N; ++i) f[x * N + i] = hvec[i];
    return f;
  };
  std::vector<double> ref(grid.nre);
  parallel_for(grid.nre, options.jobs, [&](std::size_t i) {
    std::vector<Complex> hv(N, Complex(0));
    hv[0] = grid.re(static_cast<int>(i));
    ref[i] = std::abs(engine.evaluate(options.precision, field_at(hv)));
  });
  const int per = std::max(1, options.samples_per_point);
  const std::size_t total = grid.size() * per;
  std::vector<std::vector<Complex>> points(total);
  std::vector<double> values(total);
  std::vector<char> inside(total);
  parallel_for(total, options.jobs, [&](std::size_t t) {
    std::size_t gi = t / per;
    Complex h = grid.point(gi);
    int col = static_cast<int>(gi / grid.nim);
    SplitMix64 rng = SplitMix64::stream(options.seed, t);
    auto tr = random_split(rng, N - 1, options.transverse_fraction * std::max(h.real(), 0.0));
    std::vector<Complex> hv{h};
    hv.insert(hv.end(), tr.begin(), tr.end());
    Complex z = engine.evaluate(options.precision, field_at(hv));
    values[t] = ref[col] > 0 ? std::abs(z) / ref[col] : std::abs(z);
    inside[t] = region.contains_vector(hv);
    points[t] = std::move(hv);
  });
  for (std::size_t t = 0; t < total; ++t) scan_record(report, std::move(points[t]), values[t], inside[t] != 0);
  return report;
}

namespace {

// P restricted to variable j: P = A + B z_j with all other variables fixed.
void affine_slice(const std::vector<ComplexLD>& c, int n, std::span<const ComplexLD> z, int j, ComplexLD& A,
                  ComplexLD& B) {
  std::vector<ComplexLD> a = c;
  std::size_t size = a.size();
  // fold every variable except j, top variable first; j ends up at bit 0
  for (int v = n - 1; v >= 0; --v) {
    if (v == j) continue;
    // v is still at bit v: only j (if above v) survives above it
    std::size_t bit = std::size_t{1} << v;
    std::vector<ComplexLD> b(size / 2);
    for (std::size_t X = 0; X < size; ++X) {
      if (X & bit) continue;
      std::size_t low = X & (bit - 1), high = (X >> (v + 1)) << v;
      b[high | low] = a[X] + z[v] * a[X | bit];
    }
    a.swap(b);
    size /= 2;
  }
  A = a[0];
  B = a[1];
}

}  // namespace

ConverseResult converse_probe(const ActivityPolynomial& P, const ConverseOptions& options) {
  const int n = P.nvars();
  if (n > 10) fail(ErrorCode::InvalidInput, "converse probe is limited to 10 variables");
  require(n >= 1, "converse probe needs at least one variable");
  if (!P.all_positive()) fail(ErrorCode::InvalidInput, "converse probe needs positive coefficients");
  if (P.symmetry_defect() > 1e-12) fail(ErrorCode::InvalidInput, "converse probe needs complement-symmetric coefficients");
  ConverseResult result;
  std::vector<long double> logs(P.size());
  for (std::size_t X = 0; X < P.size(); ++X) logs[X] = static_cast<long double>(log(P[X]));

  for (double s : options.beta_scales) {
    result.scales_checked.push_back(s);
    std::vector<Quad> c(P.size());
    for (std::size_t X = 0; X < P.size(); ++X) c[X] = boost::multiprecision::exp(Quad(s) * log(P[X]));
    // uniform-field roots
    std::vector<Quad> a(n + 1, Quad(0));
    for (std::size_t X = 0; X < c.size(); ++X) a[std::popcount(static_cast<std::uint32_t>(X))] += c[X];
    RootResult roots = roots_activity(a, options.precision);
    int worst = -1;
    for (std::size_t k = 0; k < roots.roots.size(); ++k) {
      const auto& r = roots.roots[k];
      const auto& cl = roots.clusters[r.cluster];
      double dev = cl.multiplicity > 1 ? cl.centroid_deviation : r.modulus_deviation;
      if (dev > options.margin && r.modulus < 1 && (worst < 0 || r.modulus < roots.roots[worst].modulus))
        worst = static_cast<int>(k);
    }
    if (worst >= 0) {
      result.kind = ConverseResult::Kind::Violation;
      result.witness.assign(n, roots.roots[worst].z);
      result.witness_scale = s;
      result.witness_modulus = roots.roots[worst].modulus;
      result.witness_kind = "uniform-root";
      return result;
    }
    // polydisc sampling with exact one-variable slices
    std::vector<ComplexLD> cl(c.size());
    long double norm = 0;
    for (std::size_t X = 0; X < c.size(); ++X) norm = std::max(norm, static_cast<long double>(c[X]));
    for (std::size_t X = 0; X < c.size(); ++X) cl[X] = static_cast<long double>(c[X]) / norm;
    struct Hit {
      bool found = false;
      std::vector<ComplexLD> z;
      double modulus = 0;
    };
    std::vector<Hit> hits(options.samples);
    parallel_for(options.samples, options.jobs, [&](std::size_t t) {
      SplitMix64 rng = SplitMix64::stream(options.seed ^ std::hash<double>{}(s), t);
      std::vector<ComplexLD> z(n);
      for (int x = 0; x < n; ++x) {
        double u = rng.uniform();
        double r = (t % 2 == 0) ? u : 1.0 - 0.1 * u * u;
        z[x] = std::polar(static_cast<long double>(r), static_cast<long double>(2 * std::numbers::pi * rng.uniform()));
      }
      for (int j = 0; j < n; ++j) {
        ComplexLD A, B;
        affine_slice(cl, n, z, j, A, B);
        if (std::abs(B) == 0) continue;
        ComplexLD root = -A / B;
        if (std::abs(root) < 1 - options.margin) {
          hits[t].found = true;
          hits[t].z = z;
          hits[t].z[j] = root;
          hits[t].modulus = static_cast<double>(std::abs(root));
          return;
        }
      }
    });
    for (auto& h : hits) {
      if (!h.found) continue;
      result.kind = ConverseResult::Kind::Violation;
      result.witness = h.z;
      result.witness_scale = s;
      result.witness_modulus = h.modulus;
      result.witness_kind = "polydisc";
      return result;
    }
  }

  // Walsh projection of log E onto constant + pair characters
  std::ostringstream note;
  note << "Lee-Yang property tested at " << result.scales_checked.size() << " temperature multipliers only";
  result.notes.push_back(note.str());
  long double inv = 1.0L / static_cast<long double>(P.size());
  long double constant = 0;
  for (auto l : logs) constant += l;
  constant *= inv;
  std::vector<long double> K(static_cast<std::size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      long double s = 0;
      for (std::size_t X = 0; X < P.size(); ++X) s += (((X >> x) ^ (X >> y)) & 1) ? -logs[X] : logs[X];
      K[x * n + y] = s * inv;
    }
  long double residual = 0;
  for (std::size_t X = 0; X < P.size(); ++X) {
    long double model = constant;
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) model += (((X >> x) ^ (X >> y)) & 1) ? -K[x * n + y] : K[x * n + y];
    residual = std::max(residual, std::fabs(logs[X] - model));
  }
  double beta = P.beta > 0 ? P.beta : 1.0;
  if (!(P.beta > 0)) result.notes.push_back("beta unknown; couplings reported as beta * J");
  result.min_coupling = INFINITY;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      double J = static_cast<double>(K[x * n + y]) / beta;
      result.couplings.push_back({x, y, J});
      result.min_coupling = std::min(result.min_coupling, J);
    }
  if (n == 1) result.min_coupling = 0;
  result.residual = static_cast<double>(residual);
  result.constant = static_cast<double>(constant);
  result.kind = ConverseResult::Kind::Factorization;
  return result;
}

}  // namespace lylab
