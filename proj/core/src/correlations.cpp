#include "lylab/correlations.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lylab/config.hpp"
#include "lylab/error.hpp"
#include "lylab/jet.hpp"

namespace lylab {

std::string_view to_string(UrsellRoute r) { return r == UrsellRoute::Moebius ? "moebius" : "epsilon_derivative"; }

std::string_view to_string(InequalityKind k) {
  switch (k) {
    case InequalityKind::GHS: return "ghs";
    case InequalityKind::Griffiths: return "griffiths";
    case InequalityKind::FKG: return "fkg";
  }
  return "?";
}

InequalityKind parse_inequality(std::string_view text) {
  if (text == "ghs") return InequalityKind::GHS;
  if (text == "griffiths") return InequalityKind::Griffiths;
  if (text == "fkg") return InequalityKind::FKG;
  fail(ErrorCode::InvalidInput, "unknown inequality kind '" + std::string(text) + "'");
}

namespace {

Complex to_c(ComplexLD z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

bool tabulable(const SpinModel& model) {
  if (!model.measure().is_ising() || model.sites() > 20) return false;
  for (const auto& a : model.measure().atom_list())
    if (!(a.weight > 0)) return false;
  return true;
}

void fwht(std::vector<ComplexLD>& a) {
  for (std::size_t len = 1; len < a.size(); len <<= 1)
    for (std::size_t i = 0; i < a.size(); i += len << 1)
      for (std::size_t j = i; j < i + len; ++j) {
        ComplexLD u = a[j], v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
}

void check_spec(const SpinModel& model, const UrsellSpec& spec) {
  require(spec.order() >= 1, "Ursell order must be >= 1");
  if (spec.order() > kMaxUrsellOrder) fail(ErrorCode::InvalidInput, "Ursell order limited to 6");
  require(spec.axes.empty() || spec.axes.size() == spec.sites.size(), "one axis per site expected");
  for (int i = 0; i < spec.order(); ++i) {
    require(spec.sites[i] >= 0 && spec.sites[i] < model.sites(), "Ursell site out of range");
    require(spec.axis(i) >= 0 && spec.axis(i) < model.components(), "Ursell axis out of range");
  }
}

// Calls fn(block labels, block count) for every set partition of {0..n-1}.
template <class F>
void for_each_partition(int n, F&& fn) {
  std::vector<int> a(n, 0), mx(n, 0);
  while (true) {
    fn(a, mx[n - 1] + 1);
    int i = n - 1;
    while (i > 0 && a[i] == mx[i - 1] + 1) --i;
    if (i == 0) return;
    ++a[i];
    mx[i] = std::max(mx[i - 1], a[i]);
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      mx[j] = mx[i];
    }
  }
}

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Distance of the base fields from the cone boundary: min_x beta Re h_x.
double cone_room(const SpinModel& model) {
  double m = INFINITY;
  for (auto h : effective_fields(model)) m = std::min(m, model.beta() * h.real());
  return m;
}

}  // namespace

MomentOracle::MomentOracle(const SpinModel& model, CorrelationOptions options)
    : model_(model), options_(options), hash_(model_hash(model)) {
  const int n = model.sites();
  if (tabulable(model)) {
    const auto& I = model.interaction();
    struct Term {
      std::uint32_t mask;
      long double J;
    };
    std::vector<Term> terms;
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (I.pair(x, y) != 0) terms.push_back({(1u << x) | (1u << y), I.pair(x, y)});
    for (const auto& q : I.quartic())
      terms.push_back({(1u << q.sites[0]) | (1u << q.sites[1]) | (1u << q.sites[2]) | (1u << q.sites[3]), q.J});
    long double lw_plus = 0, lw_minus = 0;
    for (const auto& a : model.measure().atom_list()) (a.location > 0 ? lw_plus : lw_minus) = std::log(static_cast<long double>(a.weight));
    auto h = effective_fields(model);
    const long double beta = model.beta();
    std::size_t size = std::size_t{1} << n;
    std::vector<ComplexLD> lw(size);
    long double shift = -INFINITY;
    for (std::size_t X = 0; X < size; ++X) {
      long double e = 0;
      for (const auto& t : terms) e += (std::popcount(static_cast<std::uint32_t>(X) & t.mask) & 1) ? -t.J : t.J;
      ComplexLD f = beta * e;
      for (int x = 0; x < n; ++x) {
        bool down = (X >> x) & 1;
        ComplexLD bh = beta * ComplexLD(h[x].real(), h[x].imag());
        f += down ? -bh + lw_minus : bh + lw_plus;
      }
      lw[X] = f;
      shift = std::max(shift, f.real());
    }
    std::vector<ComplexLD> p(size);
    ComplexLD sum = 0;
    long double sum_abs = 0;
    for (std::size_t X = 0; X < size; ++X) {
      p[X] = std::exp(lw[X] - shift);
      sum += p[X];
      sum_abs += std::abs(p[X]);
    }
    if (std::abs(sum) < options_.singular_margin * sum_abs)
      fail(ErrorCode::SingularAverage, "partition function too close to zero for averages");
    fwht(p);
    table_.resize(size);
    for (std::size_t A = 0; A < size; ++A) table_[A] = p[A] / sum;
    return;
  }
  engine_ = std::make_unique<PartitionEngine>(model, options.engine);
  fields_ = engine_->model_fields();
  z_ = engine_->evaluate_ext(fields_);
  std::vector<Complex> re(fields_.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = fields_[i].real();
  long double zref = std::abs(engine_->evaluate_ext(re));
  if (std::abs(z_) < options_.singular_margin * zref)
    fail(ErrorCode::SingularAverage, "partition function too close to zero for averages");
}

Complex MomentOracle::average(std::span<const SpinInsertion> insert) { return to_c(average_ext(insert)); }

ComplexLD MomentOracle::average_ext(std::span<const SpinInsertion> insert) {
  if (tabulated()) {
    std::uint32_t mask = 0;
    for (const auto& s : insert) {
      require(s.axis == 0 && s.site >= 0 && s.site < model_.sites(), "spin insertion out of range");
      mask ^= 1u << s.site;
    }
    return table_[mask];
  }
  std::vector<std::pair<int, int>> key;
  for (const auto& s : insert) key.push_back({s.site, s.axis});
  std::sort(key.begin(), key.end());
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  ComplexLD v = engine_->evaluate_ext(fields_, insert) / z_;
  cache_.emplace(std::move(key), v);
  return v;
}

Complex thermal_average(const SpinModel& model, std::span<const SpinInsertion> insert,
                        const CorrelationOptions& options) {
  MomentOracle oracle(model, options);
  return oracle.average(insert);
}

UrsellResult ursell_moebius(MomentOracle& oracle, const UrsellSpec& spec) {
  check_spec(oracle.model(), spec);
  const int n = spec.order();
  std::vector<ComplexLD> block_cache(std::size_t{1} << n);
  std::vector<char> have(block_cache.size(), 0);
  auto block_moment = [&](std::uint32_t positions) {
    if (!have[positions]) {
      std::vector<SpinInsertion> ins;
      for (int i = 0; i < n; ++i)
        if (positions >> i & 1) ins.push_back({spec.sites[i], spec.axis(i)});
      block_cache[positions] = oracle.average_ext(ins);
      have[positions] = 1;
    }
    return block_cache[positions];
  };
  ComplexLD total = 0;
  long double largest = 0;
  for_each_partition(n, [&](const std::vector<int>& label, int blocks) {
    std::vector<std::uint32_t> pos(blocks, 0);
    for (int i = 0; i < n; ++i) pos[label[i]] |= 1u << i;
    ComplexLD prod = 1;
    for (auto p : pos) prod *= block_moment(p);
    long double coef = ((blocks - 1) % 2 ? -1.0L : 1.0L) * factorial(blocks - 1);
    largest = std::max(largest, std::abs(coef * prod));
    total += coef * prod;
  });
  UrsellResult r;
  r.value = to_c(total);
  r.route = UrsellRoute::Moebius;
  r.model_hash = oracle.hash();
  r.method = "set-partitions";
  // rounding bound: Bell-number many terms, none larger than `largest`
  r.error_estimate = static_cast<double>(16 * std::numeric_limits<long double>::epsilon() * largest * factorial(n));
  return r;
}

UrsellResult ursell_moebius(const SpinModel& model, const UrsellSpec& spec, const CorrelationOptions& options) {
  MomentOracle oracle(model, options);
  return ursell_moebius(oracle, spec);
}

namespace {

// Coupling profile of each eps variable: (site-major field index, weight).
using Coupling = std::vector<std::pair<int, Complex>>;

ComplexLD cumulant_from_moment_jet(MultilinearJet jet) {
  MultilinearJet L = jet_log(jet);
  return L[(std::size_t{1} << jet.vars()) - 1];
}

int default_nodes(int n) {
  switch (n) {
    case 1: return 16;
    case 2: return 12;
    case 3: return 10;
    case 4: return 8;
    default: return 6;
  }
}

// Multilinear Taylor coefficients of Z(eps)/Z(0) from a trapezoid rule on the
// polycircle |eps_a| = r; Z is entire in eps, so the rule converges geometrically.
MultilinearJet cauchy_jet(const PartitionEngine& engine, const std::vector<Complex>& base,
                          const std::vector<Coupling>& couplings, double beta, double r, int M, ComplexLD z0) {
  const int n = static_cast<int>(couplings.size());
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= M;
  std::vector<ComplexLD> omega(M);
  for (int k = 0; k < M; ++k)
    omega[k] = std::polar(1.0L, 2 * std::numbers::pi_v<long double> * k / M);
  MultilinearJet jet(n);
  std::vector<int> j(n, 0);
  const std::vector<ComplexLD> base_ld(base.begin(), base.end());
  std::vector<ComplexLD> f(base.size());
  for (std::size_t t = 0; t < total; ++t) {
    f = base_ld;
    for (int a = 0; a < n; ++a) {
      ComplexLD eps = static_cast<long double>(r) * omega[j[a]];
      for (const auto& [idx, w] : couplings[a])
        f[idx] += eps * ComplexLD(w.real(), w.imag()) / static_cast<long double>(beta);
    }
    ComplexLD F = engine.evaluate_ext(f) / z0;
    for (std::size_t S = 0; S < jet.coeffs().size(); ++S) {
      ComplexLD v = F;
      for (int a = 0; a < n; ++a)
        if (S >> a & 1) v *= std::conj(omega[j[a]]);
      jet[S] += v;
    }
    for (int a = n - 1; a >= 0; --a) {
      if (++j[a] < M) break;
      j[a] = 0;
    }
  }
  for (std::size_t S = 0; S < jet.coeffs().size(); ++S)
    jet[S] /= static_cast<long double>(total) * std::pow(static_cast<long double>(r), std::popcount(S));
  return jet;
}

}  // namespace

UrsellResult ursell_epsilon_derivative(const SpinModel& model, const UrsellSpec& spec,
                                       const CorrelationOptions& options) {
  check_spec(model, spec);
  const int n = spec.order();
  const int N = model.components();
  PartitionEngine engine(model, options.engine);
  const std::vector<Complex> base = engine.model_fields();
  ComplexLD z0 = engine.evaluate_ext(base);
  if (z0 == ComplexLD(0)) fail(ErrorCode::SingularAverage, "partition function vanishes at eps = 0");
  const double beta = model.beta();
  double room = cone_room(model);
  double rho = room > 0 ? 0.9 * room / n : 0.1 / n;

  UrsellResult r;
  r.route = UrsellRoute::EpsilonDerivative;
  r.model_hash = model_hash(model);

  if (model.measure().is_ising()) {
    // Z(eps) e^{-sum eps} is multi-affine in v_a = e^{-2 eps_a}
    r.method = "multiaffine-interpolation";
    ComplexLD values[2];
    // Re eps < 0 gives |v - 1| > 2 rho, which keeps the v-interpolation better conditioned
    const double angles[2] = {std::numbers::pi - 0.3, std::numbers::pi - 1.1};
    for (int pass = 0; pass < 2; ++pass) {
      ComplexLD eps = std::polar(static_cast<long double>(rho), static_cast<long double>(angles[pass]));
      std::size_t size = std::size_t{1} << n;
      std::vector<ComplexLD> F(size);
      const std::vector<ComplexLD> base_ld(base.begin(), base.end());
      for (std::size_t T = 0; T < size; ++T) {
        std::vector<ComplexLD> f = base_ld;
        for (int a = 0; a < n; ++a)
          if (T >> a & 1) f[spec.sites[a] * N + spec.axis(a)] += eps / static_cast<long double>(beta);
        F[T] = engine.evaluate_ext(f) / z0 * std::exp(-static_cast<long double>(std::popcount(T)) * eps);
      }
      std::vector<ComplexLD> c = subset_moebius(F, n);
      ComplexLD dv = std::exp(-2.0L * eps) - 1.0L;
      MultilinearJet jet(n);
      for (std::size_t S = 0; S < size; ++S) {
        int k = std::popcount(S);
        jet[S] = c[S] * std::pow(-2.0L / dv, k);
      }
      ComplexLD v = cumulant_from_moment_jet(jet);
      if (n == 1) v += 1.0L;
      values[pass] = v;
    }
    r.value = to_c(values[0]);
    r.error_estimate = static_cast<double>(std::abs(values[0] - values[1]));
    return r;
  }

  r.method = "cauchy-trapezoid";
  int M = options.cauchy_nodes > 0 ? options.cauchy_nodes : default_nodes(n);
  double radius = std::min(rho, 0.5);
  std::vector<Coupling> couplings(n);
  for (int a = 0; a < n; ++a) couplings[a] = {{spec.sites[a] * N + spec.axis(a), Complex(1, 0)}};
  ComplexLD v1 = cumulant_from_moment_jet(cauchy_jet(engine, base, couplings, beta, radius, M, z0));
  ComplexLD v2 = cumulant_from_moment_jet(cauchy_jet(engine, base, couplings, beta, 0.8 * radius, M, z0));
  r.value = to_c(v1);
  r.error_estimate = static_cast<double>(std::abs(v1 - v2));
  return r;
}

FourierResult fourier_connected(const SpinModel& model, const std::vector<std::vector<int>>& modes, UrsellRoute route,
                                const CorrelationOptions& options) {
  const auto& lat = model.lattice();
  require(lat.boundary == Boundary::Periodic, "Fourier modes need a periodic lattice");
  const int n = static_cast<int>(modes.size());
  require(n >= 1 && n <= kMaxUrsellOrder, "Fourier cumulant order must be 1..6");
  FourierResult out;
  out.route = route;
  for (int d = 0; d < lat.dimension(); ++d) {
    long long s = 0;
    for (const auto& m : modes) {
      require(static_cast<int>(m.size()) == lat.dimension(), "mode dimension mismatch");
      s += m[d];
    }
    if (((s % lat.extents[d]) + lat.extents[d]) % lat.extents[d] != 0) out.constraint_ok = false;
  }
  bool invariant = model.interaction().kernel().has_value() && model.field().mode == FieldMode::Uniform;
  if (!out.constraint_ok && invariant) {
    out.value = 0;
    return out;
  }
  const int V = model.sites();
  const int N = model.components();
  if (route == UrsellRoute::Moebius) {
    MomentOracle oracle(model, options);
    ComplexLD total = 0;
    std::vector<int> xs(n, 0);
    std::size_t count = 1;
    for (int a = 0; a < n; ++a) count *= V;
    for (std::size_t t = 0; t < count; ++t) {
      UrsellSpec spec;
      spec.sites = xs;
      Complex u = ursell_moebius(oracle, spec).value;
      Complex phase = 1;
      for (int a = 0; a < n; ++a) phase *= plane_wave(lat, modes[a], xs[a]);
      total += ComplexLD(u.real(), u.imag()) * ComplexLD(phase.real(), phase.imag());
      for (int a = n - 1; a >= 0; --a) {
        if (++xs[a] < V) break;
        xs[a] = 0;
      }
    }
    out.value = to_c(total / static_cast<long double>(V));
    out.error_estimate = 1e-14 * std::max(1.0, std::abs(out.value));
    return out;
  }
  PartitionEngine engine(model, options.engine);
  const std::vector<Complex> base = engine.model_fields();
  ComplexLD z0 = engine.evaluate_ext(base);
  if (z0 == ComplexLD(0)) fail(ErrorCode::SingularAverage, "partition function vanishes at eps = 0");
  double room = cone_room(model);
  double radius = std::min(room > 0 ? 0.9 * room / n : 0.1 / n, 0.5);
  std::vector<Coupling> couplings(n);
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < V; ++x) couplings[a].push_back({x * N, plane_wave(lat, modes[a], x)});
  int M = options.cauchy_nodes > 0 ? options.cauchy_nodes : default_nodes(n) + 4;
  ComplexLD v1 = cumulant_from_moment_jet(cauchy_jet(engine, base, couplings, model.beta(), radius, M, z0));
  ComplexLD v2 = cumulant_from_moment_jet(cauchy_jet(engine, base, couplings, model.beta(), 0.8 * radius, M, z0));
  out.value = to_c(v1 / static_cast<long double>(V));
  out.error_estimate = static_cast<double>(std::abs(v1 - v2)) / V;
  return out;
}

namespace {

std::string label_sites(std::initializer_list<int> sites) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (int s : sites) {
    os << (first ? "" : ",") << s;
    first = false;
  }
  os << ")";
  return os.str();
}

std::string label_set(std::uint32_t mask) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int b = 0; b < 32; ++b)
    if (mask >> b & 1) {
      os << (first ? "" : ",") << b;
      first = false;
    }
  os << "}";
  return os.str();
}

std::vector<SpinInsertion> insertions(std::uint32_t mask) {
  std::vector<SpinInsertion> v;
  for (int b = 0; b < 32; ++b)
    if (mask >> b & 1) v.push_back({b, 0});
  return v;
}

}  // namespace

InequalityReport inequality_suite(const SpinModel& model, InequalityKind kind, const InequalityOptions& options) {
  InequalityReport rep;
  rep.kind = kind;
  rep.exploratory = options.exploratory;
  if (model.components() != 1) fail(ErrorCode::Unsupported, "inequality suites cover one-component spins");
  if (!model.interaction().ferromagnetic()) {
    rep.preconditions_ok = false;
    rep.notes.push_back("pair couplings are not ferromagnetic");
  }
  for (const auto& q : model.interaction().quartic())
    if (q.J < 0) {
      rep.preconditions_ok = false;
      rep.notes.push_back("negative four-spin coupling");
      break;
    }
  for (auto h : effective_fields(model))
    if (h.imag() != 0 || h.real() < 0) {
      rep.preconditions_ok = false;
      rep.notes.push_back("fields must be real and nonnegative");
      break;
    }
  if (model.measure().symmetry() != Symmetry::Even) {
    rep.preconditions_ok = false;
    rep.notes.push_back("measure is not even");
  }
  if (kind == InequalityKind::GHS && model.interaction().has_quartic())
    rep.notes.push_back("GHS with four-spin terms is tested, not assumed");
  if (!rep.preconditions_ok && !options.exploratory) return rep;

  MomentOracle oracle(model, options.correlation);
  const int n = model.sites();
  const double tol = options.tol;
  auto record = [&](std::string label, double value, bool ok) {
    ++rep.checks;
    if (!ok) rep.violations.push_back({std::move(label), value});
  };

  if (kind == InequalityKind::GHS) {
    rep.family = "third Ursell functions on all site triples";
    rep.worst = -INFINITY;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        for (int c = b; c < n; ++c) {
          double u = ursell_moebius(oracle, {{a, b, c}, {}}).value.real();
          rep.worst = std::max(rep.worst, u);
          record("u3" + label_sites({a, b, c}), u, u <= tol);
        }
    return rep;
  }

  // two-point Ursell matrix, shared by Griffiths and FKG
  std::vector<double> C(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) C[a * n + b] = ursell_moebius(oracle, {{a, b}, {}}).value.real();

  rep.worst = INFINITY;
  if (kind == InequalityKind::Griffiths) {
    int cap = options.max_subset > 0 ? options.max_subset : (oracle.tabulated() ? 3 : 2);
    std::vector<std::uint32_t> sets;
    for (std::uint32_t A = 1; A < (1u << n); ++A)
      if (std::popcount(A) <= cap) sets.push_back(A);
    std::ostringstream fam;
    fam << "<sigma_A> and <sigma_A sigma_B> - <sigma_A><sigma_B> for |A|, |B| <= " << cap;
    rep.family = fam.str();
    std::vector<long double> m(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      m[i] = oracle.average_ext(insertions(sets[i])).real();
      double v = static_cast<double>(m[i]);
      rep.worst = std::min(rep.worst, v);
      record("<s" + label_set(sets[i]) + ">", v, v >= -tol);
    }
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t j = i; j < sets.size(); ++j) {
        auto ins = insertions(sets[i]);
        auto more = insertions(sets[j]);
        ins.insert(ins.end(), more.begin(), more.end());
        double v = static_cast<double>(oracle.average_ext(ins).real() - m[i] * m[j]);
        rep.worst = std::min(rep.worst, v);
        record("cov" + label_set(sets[i]) + label_set(sets[j]), v, v >= -tol);
      }
    return rep;
  }

  rep.family = "single spins, prefix sums, suffix sums";
  std::vector<std::uint32_t> fam;
  for (int a = 0; a < n; ++a) fam.push_back(1u << a);
  for (int k = 2; k <= n; ++k) fam.push_back((1u << k) - 1);
  for (int k = 2; k < n; ++k) fam.push_back(((1u << n) - 1) ^ ((1u << (n - k)) - 1));
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i; j < fam.size(); ++j) {
      double v = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if ((fam[i] >> a & 1) && (fam[j] >> b & 1)) v += C[a * n + b];
      rep.worst = std::min(rep.worst, v);
      record("cov(S" + label_set(fam[i]) + ",S" + label_set(fam[j]) + ")", v, v >= -tol);
    }
  return rep;
}

MagnetizationTable magnetization_profile(const SpinModel& model, std::span<const double> h_grid, int site,
                                         const CorrelationOptions& options, double concavity_tol) {
  require(site >= 0 && site < model.sites(), "site out of range");
  require(model.components() == 1, "magnetization profile covers one-component spins");
  MagnetizationTable t;
  t.site = site;
  t.concavity_tol = concavity_tol;
  const int n = model.sites();
  const double beta = model.beta();
  for (double h : h_grid) {
    MomentOracle oracle(model.with_field(FieldSpec::uniform(h)), options);
    MagnetizationRow row;
    row.h = h;
    row.m = ursell_moebius(oracle, {{site}, {}}).value.real();
    long double d1 = 0, d2 = 0;
    for (int z = 0; z < n; ++z) {
      d1 += ursell_moebius(oracle, {{site, z}, {}}).value.real();
      for (int w = 0; w < n; ++w) d2 += ursell_moebius(oracle, {{site, z, w}, {}}).value.real();
    }
    row.dm = static_cast<double>(beta * d1);
    row.d2m = static_cast<double>(beta * beta * d2);
    if (h > 0) {
      t.positive = t.positive && row.m > 0;
      t.increasing = t.increasing && row.dm > 0;
    }
    t.concave = t.concave && row.d2m <= concavity_tol;
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace lylab
