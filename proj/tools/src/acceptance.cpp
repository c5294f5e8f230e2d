#include "lylab/tools/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "lylab/correlations.hpp"
#include "lylab/error.hpp"
#include "lylab/leeyang.hpp"
#include "lylab/polyengine.hpp"
#include "lylab/quantum.hpp"
#include "lylab/thermo.hpp"
#include "lylab/tools/instances.hpp"

namespace lylab::tools {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond) { ok = ok && cond; }
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

// 1. 200 random ferromagnetic Ising models: every activity root on |z| = 1.
CriterionResult circle(const AcceptanceOptions& o, Check& c) {
  const double betas[] = {0.25, 1.0, 2.0};
  InstanceShape shape;
  shape.max_sites = 12;
  double worst = 0;
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    SpinModel m = random_ferro_model(o.seed + 1, i, MeasureChoice::Ising, betas[i % 3], 0, shape);
    CircleReport r = circle_theorem_check(m, Precision::Extended, 1e-9, o.jobs);
    worst = std::max(worst, r.max_deviation);
    if (r.verdict != CircleVerdict::Pass) ++failures;
  }
  c.require(failures == 0 && worst < 1e-9);
  c.detail << "200 models, max ||z|-1| = " << sci(worst) << ", failures " << failures;
  return {1, "circle-theorem", false, "", 0, 300};
}

// 2. Normalized |Z| > 1e-8 on the 41x41 half-plane grid, 50 models.
CriterionResult half_plane(const AcceptanceOptions& o, Check& c) {
  const double betas[] = {0.25, 0.5, 1.0};
  GridSpec grid{0.05, 2.0, 41, -2.0, 2.0, 41};
  double worst = INFINITY;
  int failed = 0, continuous = 0;
  for (int i = 0; i < 50; ++i) {
    MeasureChoice mc = i % 5 == 3 ? MeasureChoice::Uniform : i % 5 == 4 ? MeasureChoice::Quartic : MeasureChoice::Ising;
    InstanceShape shape;
    ScanOptions so;
    shape.max_sites = 10;
    if (mc != MeasureChoice::Ising) {
      // chains and rings keep the elimination width at 3 sites for 1681 evaluations
      ++continuous;
      shape.max_sites = 6;
      shape.allow_square = false;
      shape.long_range_probability = 0;
      so.engine.order = 32;
    }
    SpinModel m = random_ferro_model(o.seed + 2, i, mc, betas[i % 3], 0, shape);
    so.jobs = o.jobs;
    so.precision = Precision::Extended;
    ScanReport r = zero_free_scan(m, RegionSpec::half_plane(), grid, so);
    worst = std::min(worst, r.min_normalized);
    if (!r.passed()) ++failed;
  }
  c.require(failed == 0);
  c.detail << "50 models (" << continuous << " continuous), min normalized |Z| = " << sci(worst) << ", failed "
           << failed;
  return {2, "zero-free-half-plane", false, "", 0, 600};
}

// 3. Cone D with two modes and sum |eps| = 0.8 Re h: no zeros on 20 points x 20 models.
CriterionResult cone(const AcceptanceOptions& o, Check& c) {
  GridSpec grid{0.2, 2.0, 5, -1.0, 1.0, 4};
  InstanceShape shape;
  shape.max_sites = 10;
  shape.allow_free = false;
  double worst = INFINITY;
  int zeros = 0;
  std::size_t inside = 0;
  for (int i = 0; i < 20; ++i) {
    SpinModel m = random_ferro_model(o.seed + 3, i, MeasureChoice::Ising, i % 2 ? 1.0 : 0.5, 0, shape);
    ScanOptions so;
    so.jobs = o.jobs;
    so.seed = o.seed + 3 + i;
    so.cone_fraction = 0.8;
    so.precision = Precision::Extended;
    ScanReport r = zero_free_scan(m, RegionSpec::cone(2), grid, so);
    zeros += static_cast<int>(r.inside_failures());
    inside += r.points_inside;
    worst = std::min(worst, r.min_normalized);
  }
  c.require(zeros == 0 && inside == 400);
  c.detail << "20 periodic models x 20 cone points (" << inside << " inside D), min normalized |Z| = " << sci(worst)
           << ", zeros " << zeros;
  return {3, "cone-corollary", false, "", 0, 0};
}

// 4. Moebius and eps-derivative Ursell routes agree to 1e-8 relative, n <= 4.
CriterionResult ursell_routes(const AcceptanceOptions& o, Check& c) {
  double worst = 0;
  int compared = 0;
  for (int i = 0; i < 50; ++i) {
    MeasureChoice mc = i % 5 == 3 ? MeasureChoice::Uniform : i % 5 == 4 ? MeasureChoice::Quartic : MeasureChoice::Ising;
    InstanceShape shape;
    shape.max_sites = mc == MeasureChoice::Ising ? 8 : 3;
    SplitMix64 rng = SplitMix64::stream(o.seed + 4, 1000 + i);
    Complex h(rng.uniform(0.3, 1.5), rng.uniform(-1.0, 1.0));
    SpinModel m = random_ferro_model(o.seed + 4, i, mc, i % 2 ? 1.0 : 0.5, h, shape);
    CorrelationOptions co;
    if (mc != MeasureChoice::Ising) co.engine.order = 24;
    MomentOracle oracle(m, co);
    for (int n = 1; n <= 4; ++n) {
      UrsellSpec spec;
      for (int k = 0; k < n; ++k) spec.sites.push_back(static_cast<int>(rng.below(m.sites())));
      Complex a = ursell_moebius(oracle, spec).value;
      Complex b = ursell_epsilon_derivative(m, spec, co).value;
      double rel = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
      worst = std::max(worst, rel);
      ++compared;
    }
  }
  c.require(worst <= 1e-8);
  c.detail << compared << " cumulants on 50 models at complex h, max relative route difference = " << sci(worst);
  return {4, "ursell-route-equivalence", false, "", 0, 0};
}

// 5. Converse probe: pair couplings recovered from E_X; LY quartic instances
// give nonnegative pair couplings.
CriterionResult converse(const AcceptanceOptions& o, Check& c) {
  double worst_res = 0, worst_err = 0, min_j = INFINITY, quartic_min = INFINITY;
  int bad = 0;
  for (int i = 0; i < 30; ++i) {
    SplitMix64 rng = SplitMix64::stream(o.seed + 5, i);
    int n = 2 + static_cast<int>(rng.below(7));
    double beta = i % 2 ? 1.0 : 0.5;
    Interaction I = Interaction::dense(n);
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (rng.uniform() < 0.7) I.set_pair(x, y, rng.uniform(0, 1.2));
    SpinModel m(LatticeSpec::chain(n, Boundary::Free), SingleSpinMeasure::ising(), I, FieldSpec::uniform(0), beta);
    ConverseOptions co;
    co.seed = o.seed + 5 + i;
    co.jobs = o.jobs;
    ConverseResult r = converse_probe(partition_polynomial(m), co);
    if (r.kind != ConverseResult::Kind::Factorization) {
      ++bad;
      continue;
    }
    worst_res = std::max(worst_res, r.residual);
    min_j = std::min(min_j, r.min_coupling);
    for (const auto& p : r.couplings) worst_err = std::max(worst_err, std::abs(p.J - I.pair(p.x, p.y)));
  }
  int quartic_bad = 0;
  for (int i = 0; i < 10; ++i) {
    // the probe scans beta multipliers down to 1/4, so the quartic condition
    // must already hold at a quarter of the instance temperature
    const double beta = i % 2 ? 1.0 : 0.5;
    const double lowest = ConverseOptions{}.beta_scales.front();
    SpinModel m = random_quartic_ly_model(o.seed + 50, i, 4 + i % 5, lowest * beta).with_beta(beta);
    if (!check_quartic_ly_conditions(m).both()) {
      ++quartic_bad;
      continue;
    }
    ConverseOptions co;
    co.seed = o.seed + 50 + i;
    co.jobs = o.jobs;
    ConverseResult r = converse_probe(partition_polynomial(m), co);
    if (r.kind != ConverseResult::Kind::Factorization) {
      ++quartic_bad;
      continue;
    }
    quartic_min = std::min(quartic_min, r.min_coupling);
  }
  c.require(bad == 0 && worst_res < 1e-10 && min_j >= -1e-10 && worst_err < 1e-10);
  c.require(quartic_bad == 0 && quartic_min >= -1e-10);
  c.detail << "30 pair instances: residual " << sci(worst_res) << ", max |J - J_true| " << sci(worst_err)
           << ", min J " << sci(min_j) << ", not factorized " << bad << "; 10 LY quartic instances: min pair J "
           << sci(quartic_min) << ", rejected " << quartic_bad;
  return {5, "converse-probe", false, "", 0, 0};
}

// 6. E_X = exp(beta Jt0) E2_X E4_X with Jt_U = 8 J_U on 4-sets.
CriterionResult schur(const AcceptanceOptions& o, Check& c) {
  double worst = 0;
  int table_bad = 0;
  for (int i = 0; i < 20; ++i) {
    int n = 4 + i % 3;
    double beta = i % 2 ? 1.0 : 0.5;
    SpinModel m = random_quartic_model(o.seed + 6, i, n, beta);
    QuarticDecomposition d = quartic_decomposition(m);
    ActivityPolynomial direct = partition_polynomial(m);
    ActivityPolynomial prod = schur_hadamard(d.z2, d.z4);
    Quad scale = boost::multiprecision::exp(Quad(beta) * Quad(d.jtilde0));
    Quad top = 0, err = 0;
    for (std::uint32_t X = 0; X < direct.size(); ++X) {
      top = std::max(top, abs(direct[X]));
      err = std::max(err, abs(direct[X] - scale * prod[X]));
    }
    worst = std::max(worst, static_cast<double>(err / top));
    for (const auto& q : d.quartic_tilde) {
      double J = 0;
      for (const auto& t : m.interaction().quartic())
        if (t.sites == q.sites) J = t.J;
      if (q.J != 8 * J) ++table_bad;
    }
    for (const auto& p : d.pair_tilde) {
      double load = 0;
      for (const auto& t : m.interaction().quartic())
        if (std::count(t.sites.begin(), t.sites.end(), p.x) && std::count(t.sites.begin(), t.sites.end(), p.y))
          load += t.J;
      double expect = 2 * m.interaction().pair(p.x, p.y) - 2 * load;
      if (std::abs(p.J - expect) > 1e-14 * (1 + std::abs(expect))) ++table_bad;
    }
  }
  c.require(worst <= 1e-12 && table_bad == 0);
  c.detail << "20 coupling sets, |Lambda| <= 6: max relative |E - Z2*Z4| = " << sci(worst)
           << ", Jtilde table mismatches " << table_bad;
  return {6, "schur-hadamard-identity", false, "", 0, 0};
}

// 7. GHS, Griffiths and FKG families on ferromagnetic instances.
CriterionResult inequalities(const AcceptanceOptions& o, Check& c) {
  const double hs[] = {0.0, 0.2, 1.0};
  int runs = 0, failed = 0;
  std::size_t checks = 0;
  double ghs_worst = -INFINITY, grif_worst = INFINITY, fkg_worst = INFINITY;
  for (int i = 0; i < 50; ++i) {
    MeasureChoice mc = i % 5 == 4 ? MeasureChoice::Uniform : MeasureChoice::Ising;
    InstanceShape shape;
    shape.max_sites = mc == MeasureChoice::Ising ? 8 : 3;
    for (double h : hs) {
      SpinModel m = random_ferro_model(o.seed + 7, i, mc, i % 2 ? 1.0 : 0.5, h, shape);
      for (auto kind : {InequalityKind::GHS, InequalityKind::Griffiths, InequalityKind::FKG}) {
        InequalityOptions io;
        io.tol = 1e-12;
        InequalityReport r = inequality_suite(m, kind, io);
        ++runs;
        checks += r.checks;
        if (!r.passed()) ++failed;
        if (kind == InequalityKind::GHS) ghs_worst = std::max(ghs_worst, r.worst);
        if (kind == InequalityKind::Griffiths) grif_worst = std::min(grif_worst, r.worst);
        if (kind == InequalityKind::FKG) fkg_worst = std::min(fkg_worst, r.worst);
      }
    }
  }
  c.require(failed == 0);
  c.detail << runs << " suites, " << checks << " checks: max u3 " << sci(ghs_worst) << ", min Griffiths "
           << sci(grif_worst) << ", min FKG covariance " << sci(fkg_worst) << ", failed " << failed;
  return {7, "correlation-inequalities", false, "", 0, 0};
}

// 8. <s> > 0, d<s>/dh > 0, d2<s>/dh2 <= 1e-12 on rings and in the limit;
// d<s>/dh = beta sum_z <s_0; s_z> against a contour derivative to 1e-10.
CriterionResult magnetization(const AcceptanceOptions&, Check& c) {
  std::vector<double> hs = linspace(0.05, 2.0, 14);
  bool shape_ok = true;
  double identity_worst = 0, d2_max = -INFINITY;
  for (double J : {0.5, 1.0})
    for (int L : {4, 8, 14}) {
      SpinModel ring = ising_model(LatticeSpec::chain(L), J, 1.0, 0);
      MagnetizationTable t = magnetization_profile(ring, hs, 0, {}, 1e-12);
      shape_ok = shape_ok && t.positive && t.increasing && t.concave;
      for (const auto& row : t.rows) {
        d2_max = std::max(d2_max, row.d2m);
        // Cauchy derivative of <s_0>(h) on a circle inside Re h > 0
        const int nodes = 64;
        const double r = std::min(0.5 * row.h, 0.25);
        Complex acc = 0;
        for (int k = 0; k < nodes; ++k) {
          Complex w = std::polar(1.0, 2 * std::numbers::pi * k / nodes);
          SpinInsertion s0{0, 0};
          Complex m = thermal_average(ring.with_field(FieldSpec::uniform(row.h + r * w)), {&s0, 1});
          acc += m / w;
        }
        double contour = (acc / (double(nodes) * r)).real();
        identity_worst = std::max(identity_worst, std::abs(contour - row.dm) / std::abs(row.dm));
      }
    }
  bool limit_ok = true;
  for (double J : {0.5, 1.0})
    for (double h : hs) {
      LimitMagnetization lm = limit_magnetization(ising_strip(1, J, 1.0, 0), h);
      limit_ok = limit_ok && lm.m > 0 && lm.dm > 0 && lm.d2m <= 1e-12;
      d2_max = std::max(d2_max, lm.d2m);
    }
  c.require(shape_ok && limit_ok && identity_worst <= 1e-10);
  c.detail << "rings L = 4, 8, 14 and transfer limit, 14 fields in [0.05, 2]: shape " << (shape_ok && limit_ok)
           << ", max d2m " << sci(d2_max) << ", derivative identity rel. error " << sci(identity_worst);
  return {8, "magnetization-properties", false, "", 0, 0};
}

// 9. Mass gap: log coth(1) at h = 0; positive and nondecreasing in h; fit
// route agrees with the spectral route to 1e-4 relative.
CriterionResult mass_gap_criterion(const AcceptanceOptions&, Check& c) {
  double closed = std::abs(mass_gap(build_transfer(ising_strip(1, 1, 1, 0))).m - std::log(1 / std::tanh(1.0)));
  std::vector<double> hs = linspace(0.05, 2.0, 20);
  bool positive = true, monotone = true;
  double fit_worst = 0;
  int fits = 0, skipped = 0;
  for (double beta : {0.5, 1.0, 2.0}) {
    double prev = 0;
    for (double h : hs) {
      double m = mass_gap(build_transfer(ising_strip(1, 1, beta, h))).m;
      positive = positive && m > 0;
      monotone = monotone && m >= prev;
      prev = m;
      // quad precision resolves correlations down to ~1e-30 at x1 = 12
      if (m * 12 > 60) {
        ++skipped;
        continue;
      }
      MassGapFit f = mass_gap_fit(ising_strip(1, 1, beta, 0), h, 3, 12);
      fit_worst = std::max(fit_worst, f.discrepancy);
      ++fits;
    }
  }
  MassGapFit f0 = mass_gap_fit(ising_strip(1, 1, 1, 0), 0, 3, 12);
  fit_worst = std::max(fit_worst, f0.discrepancy);
  c.require(closed <= 1e-10 && positive && monotone && fit_worst <= 1e-4);
  c.detail << "|m - log coth 1| = " << sci(closed) << "; beta in {0.5, 1, 2}: positive " << positive
           << ", nondecreasing " << monotone << "; " << fits + 1 << " fits, max rel. discrepancy " << sci(fit_worst)
           << " (" << skipped << " points beyond quad range)";
  return {9, "mass-gap", false, "", 0, 0};
}

// 10. Free vs periodic <s; s'> differences decay geometrically to < 1e-6 by L = 16.
CriterionResult bc(const AcceptanceOptions&, Check& c) {
  std::vector<int> Ls{4, 6, 8, 10, 12, 14, 16};
  for (Complex h : {Complex(0.5, 0), Complex(0.5, 0.4)}) {
    BcReport r = bc_independence_check(0.25, 1.0, h, Ls, 1);
    c.require(r.monotone && r.rate < 1 && r.final_gap < 1e-6);
    c.detail << "h = " << h.real() << (h.imag() ? "+0.4i" : "") << ": rate " << fmt("%.3f", r.rate) << ", final "
             << sci(r.final_gap) << (r.monotone ? ", monotone; " : ", NOT monotone; ");
  }
  c.detail << "J = 0.25, beta = 1";
  return {10, "boundary-condition-independence", false, "", 0, 0};
}

// 11. sup |R_Lambda| over a cone grid is bounded and stable from L = 10 to 14.
CriterionResult r_study(const AcceptanceOptions& o, Check& c) {
  std::vector<std::vector<int>> modes{{1}, {2}};
  auto grid = cone_grid(modes, 0.5, 1.5, 3, -1.0, 1.0, 3, 0.8, 2, o.seed + 11);
  RStudy r = r_function_study(1.0, 1.0, {10, 11, 12, 13, 14}, modes, grid);
  bool finite = std::all_of(r.sup_abs_R.begin(), r.sup_abs_R.end(), [](double v) { return std::isfinite(v); });
  c.require(finite && r.bounded && !r.zero_alarm && r.stability < 0.01);
  c.detail << grid.size() << " cone points, L = 10..14: sup |R| in [" << fmt("%.6f", *std::min_element(r.sup_abs_R.begin(), r.sup_abs_R.end()))
           << ", " << fmt("%.6f", *std::max_element(r.sup_abs_R.begin(), r.sup_abs_R.end())) << "], variation "
           << sci(r.stability) << ", bounded " << r.bounded << ", zero alarm " << r.zero_alarm;
  return {11, "r-function-study", false, "", 0, 0};
}

// 12. Quantum zero-free scans and the classical limit.
CriterionResult quantum(const AcceptanceOptions& o, Check& c) {
  GridSpec grid{0.05, 2.0, 41, -2.0, 2.0, 41};
  double worst = INFINITY;
  for (double s : {0.5, 1.0, 1.5}) {
    QuantumModel qm = QuantumModel::all_to_all(2, s, 1.0, {1.0, 0.5, -0.5});
    QuantumScanOptions so;
    so.jobs = o.jobs;
    so.seed = o.seed + 12;
    ScanReport r = quantum_zero_scan(qm, grid, so);
    c.require(r.passed() && r.points_inside == grid.size());
    worst = std::min(worst, r.min_normalized);
  }
  LimitOptions lo;
  lo.jobs = o.jobs;
  LimitStudy single = classical_limit_study(QuantumModel::make(1, 0.5, 1.0), lo);
  LimitStudy pair = classical_limit_study(QuantumModel::all_to_all(2, 0.5, 1.0, {1, 1, 1}), lo);
  c.require(single.first_over_last >= 10);
  c.require(pair.rows.back().sup_deviation < pair.rows.front().sup_deviation);
  c.detail << "scans s = 1/2, 1, 3/2: min normalized |Q| " << sci(worst) << "; single spin dev(1/2)/dev(8) = "
           << fmt("%.2f", single.first_over_last) << "; two-spin Heisenberg dev " << sci(pair.rows.front().sup_deviation)
           << " -> " << sci(pair.rows.back().sup_deviation) << (pair.nonincreasing ? " (monotone)" : " (flagged)");
  return {12, "quantum", false, "", 0, 600};
}

// 13. Delta probe on strips w = 2..6 completes and is deterministic.
CriterionResult delta(const AcceptanceOptions& o, Check& c) {
  std::vector<int> widths{2, 3, 4, 5, 6};
  std::vector<double> hs{0.2, 0.1, 0.05, 0.02, 0.01};
  DeltaProbe a = critical_exponent_probe(1.0, o.critical_beta, widths, hs);
  DeltaProbe b = critical_exponent_probe(1.0, o.critical_beta, widths, hs);
  bool same = a.fits.size() == b.fits.size();
  for (std::size_t i = 0; same && i < a.fits.size(); ++i)
    same = a.fits[i].slope == b.fits[i].slope && a.fits[i].xi == b.fits[i].xi;
  bool finite = std::all_of(a.fits.begin(), a.fits.end(), [](const DeltaFit& f) { return std::isfinite(f.slope); });
  c.require(same && finite && a.fits.size() == widths.size());
  c.detail << "beta = " << o.critical_beta << ", slopes d log xi / d log h:";
  for (const auto& f : a.fits) c.detail << " w" << f.width << "=" << fmt("%.4f", f.slope);
  c.detail << "; reference delta <= " << a.reference_delta << " (not asserted), deterministic " << same;
  return {13, "delta-probe", false, "", 0, 0};
}

using Runner = CriterionResult (*)(const AcceptanceOptions&, Check&);
constexpr Runner kRunners[kCriteria] = {circle, half_plane, cone,      ursell_routes,      converse, schur, inequalities,
                                        magnetization, mass_gap_criterion, bc, r_study, quantum, delta};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  require(id >= 1 && id <= kCriteria, "criterion id must be 1..13");
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = kRunners[id - 1](options, c);
    r.passed = c.ok;
  } catch (const Error& e) {
    r.id = id;
    r.passed = false;
    c.detail << "error " << code_name(e.code()) << ": " << e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.budget_seconds > 0 && r.seconds > r.budget_seconds) {
    r.passed = false;
    c.detail << "; runtime over budget";
  }
  r.detail = c.detail.str();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end())
      continue;
    out.push_back(run_criterion(id, options));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "[%s] %02d %-32s %8.1fs  ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds);
  return head + r.detail;
}

nlohmann::json to_json(const std::vector<CriterionResult>& results) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : results)
    j.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  return j;
}

}  // namespace lylab::tools
