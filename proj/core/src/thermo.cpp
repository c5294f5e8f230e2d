#include "lylab/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lylab/error.hpp"
#include "lylab/polyengine.hpp"

namespace lylab {

namespace {

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 0)) fail(ErrorCode::InvalidInput, "degenerate fit window");
  return (n * sxy - sx * sy) / den;
}

// Small dense complex matrix in quad precision, row-major.
struct QMat {
  int n = 0;
  std::vector<ComplexQuad> a;
  explicit QMat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, ComplexQuad(0)) {}
  ComplexQuad& operator()(int i, int j) { return a[i * n + j]; }
  const ComplexQuad& operator()(int i, int j) const { return a[i * n + j]; }
};

QMat mul(const QMat& x, const QMat& y) {
  QMat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const ComplexQuad& xik = x(i, k);
      for (int j = 0; j < x.n; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

QMat identity(int n) {
  QMat r(n);
  for (int i = 0; i < n; ++i) r(i, i) = 1;
  return r;
}

}  // namespace

MassGapFit mass_gap_fit(const SpinModel& model, Complex h, int x0, int x1, int ring_length) {
  require(x0 >= 1 && x1 >= x0 + 1, "fit window needs 1 <= x0 < x1");
  TransferOperator T = build_transfer(model, h);
  MassGapFit out;
  out.x0 = x0;
  out.x1 = x1;
  out.ring = ring_length > 0 ? ring_length : 8 * x1;
  require(out.ring >= 2 * x1 + 2, "ring too short for the fit window");
  MassGap gap = mass_gap(T);
  if (gap.infinite) fail(ErrorCode::InvalidInput, "lambda_2 = 0: correlations vanish, nothing to fit");
  out.spectral = gap.m;

  const int d = T.dimension();
  Complex l1 = T.eigenvalues[0];
  QMat M(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Complex v = T.matrix(i, j) / l1;
      M(i, j) = ComplexQuad(Quad(v.real()), Quad(v.imag()));
    }
  const int L = out.ring;
  // P[x] = M^x for x <= x1; Q = M^{L - x} walked downward
  std::vector<QMat> P;
  P.push_back(identity(d));
  for (int x = 1; x <= x1; ++x) P.push_back(mul(P.back(), M));
  QMat Q = identity(d);
  for (int k = 0; k < L - x1; ++k) Q = mul(Q, M);
  std::vector<ComplexQuad> two(x1 + 1);
  ComplexQuad Z = 0, one = 0;
  {
    QMat full = mul(P[x1], Q);
    for (int a = 0; a < d; ++a) {
      Z += full(a, a);
      one += Quad(T.row_spin[a]) * full(a, a);
    }
  }
  for (int x = x1; x >= 0; --x) {
    ComplexQuad t = 0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) t += Quad(T.row_spin[a]) * P[x](a, b) * Quad(T.row_spin[b]) * Q(b, a);
    two[x] = t;
    if (x > 0) Q = mul(Q, M);
  }
  ComplexQuad mean = one / Z;
  std::vector<double> xs, ys;
  for (int x = 0; x <= x1; ++x) {
    ComplexQuad c = two[x] / Z - mean * mean;
    double mag = static_cast<double>(abs(c));
    out.correlation.push_back(mag);
    if (x >= x0) {
      if (!(mag > 0)) fail(ErrorCode::InvalidInput, "vanishing correlation inside the fit window");
      xs.push_back(x);
      ys.push_back(-std::log(mag));
    }
  }
  out.m = fit_slope(xs, ys);
  out.discrepancy = std::abs(out.m - out.spectral) / out.spectral;
  return out;
}

LimitMagnetization limit_magnetization(const SpinModel& model, double h, int nodes) {
  require(h > 0, "limit magnetization needs h > 0");
  require(nodes >= 8, "at least 8 contour nodes");
  const double r = std::min(0.5 * h, 0.5);
  std::vector<Complex> g(nodes);
  double prev_arg = 0;
  double width = 0;
  for (int j = 0; j < nodes; ++j) {
    double th = 2 * std::numbers::pi * j / nodes;
    TransferOperator T = build_transfer(model, h + std::polar(r, th));
    width = T.width;
    Complex l1 = T.eigenvalues[0];
    // unwrap the argument along the contour so log lambda_1 stays continuous
    double a = std::arg(l1);
    if (j > 0) a += 2 * std::numbers::pi * std::round((prev_arg - a) / (2 * std::numbers::pi));
    prev_arg = a;
    g[j] = Complex(std::log(std::abs(l1)), a);
  }
  Complex c[4] = {};
  for (int k = 1; k <= 3; ++k) {
    Complex s = 0;
    for (int j = 0; j < nodes; ++j) s += g[j] * std::polar(1.0, -2 * std::numbers::pi * k * j / nodes);
    c[k] = s / (nodes * std::pow(r, k));
  }
  const double bw = model.beta() * width;
  LimitMagnetization out;
  out.h = h;
  out.m = c[1].real() / bw;
  out.dm = 2 * c[2].real() / bw;
  out.d2m = 6 * c[3].real() / bw;
  return out;
}

std::vector<RStudyPoint> cone_grid(const std::vector<std::vector<int>>& modes, double re0, double re1, int nre,
                                   double im0, double im1, int nim, double fraction, int phase_samples,
                                   std::uint64_t seed) {
  require(re0 > 0 && re1 >= re0 && nre >= 1 && nim >= 1, "cone grid needs Re h > 0 and positive counts");
  require(fraction >= 0 && fraction < 1, "cone fraction must lie in [0, 1)");
  require(phase_samples >= 1, "at least one eps sample per grid point");
  std::vector<RStudyPoint> grid;
  std::uint64_t index = 0;
  for (int i = 0; i < nre; ++i)
    for (int j = 0; j < nim; ++j) {
      double re = nre == 1 ? re0 : re0 + (re1 - re0) * i / (nre - 1);
      double im = nim == 1 ? im0 : im0 + (im1 - im0) * j / (nim - 1);
      for (int s = 0; s < phase_samples; ++s) {
        SplitMix64 rng = SplitMix64::stream(seed, index++);
        RStudyPoint p;
        p.h = {re, im};
        p.eps = random_split(rng, static_cast<int>(modes.size()), fraction * re);
        grid.push_back(std::move(p));
      }
    }
  return grid;
}

RStudy r_function_study(double J, double beta, const std::vector<int>& lengths,
                        const std::vector<std::vector<int>>& modes, const std::vector<RStudyPoint>& grid,
                        double alarm_margin) {
  require(!lengths.empty() && !grid.empty(), "r-study needs lengths and grid points");
  RStudy out;
  out.lengths = lengths;
  out.modes = modes;
  for (const auto& m : modes) require(m.size() == 1, "r-study modes are one-dimensional");
  for (int L : lengths) {
    require(L >= 1 && L <= kMaxPolynomialSites, "ring length must be 1..24");
    double sup = 0;
    for (const auto& p : grid) {
      require(p.eps.size() == modes.size(), "one eps per mode expected");
      double eps_sum = 0;
      std::vector<Perturbation> perts;
      for (std::size_t k = 0; k < modes.size(); ++k) {
        perts.push_back({p.eps[k], modes[k]});
        eps_sum += std::abs(p.eps[k]);
      }
      SpinModel model(LatticeSpec::chain(L), SingleSpinMeasure::ising(),
                      Interaction::from_kernel(LatticeSpec::chain(L), Kernel::nearest_neighbour(1, J)),
                      FieldSpec::modulated(p.h, perts), beta);
      PartitionEngine engine(model);
      const auto& f = engine.model_fields();
      ComplexLD z = engine.evaluate_ext(f);
      std::vector<Complex> re(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) re[i] = f[i].real();
      long double zref = std::abs(engine.evaluate_ext(re));
      RStudyRow row;
      row.L = L;
      row.h = p.h;
      row.eps = p.eps;
      row.alarm = std::abs(z) <= alarm_margin * zref;
      ComplexLD lr = std::log(z) / static_cast<long double>(L);
      ComplexLD R = std::exp(lr);
      row.R = {static_cast<double>(R.real()), static_cast<double>(R.imag())};
      row.abs_R = static_cast<double>(std::exp(lr.real()));
      double norm = potential_norm(model);
      row.bound = std::exp(beta * (norm + std::abs(p.h) + eps_sum));
      out.bounded = out.bounded && std::isfinite(row.abs_R) && row.abs_R <= row.bound * (1 + 1e-12);
      out.zero_alarm = out.zero_alarm || row.alarm;
      sup = std::max(sup, row.abs_R);
      out.rows.push_back(std::move(row));
    }
    out.sup_abs_R.push_back(sup);
  }
  auto [lo, hi] = std::minmax_element(out.sup_abs_R.begin(), out.sup_abs_R.end());
  out.stability = (*hi - *lo) / *hi;
  for (const auto& p : grid) {
    bool flat = std::all_of(p.eps.begin(), p.eps.end(), [](Complex e) { return e == Complex(0, 0); });
    if (!flat) continue;
    TransferOperator T = build_transfer(ising_strip(1, J, beta, p.h));
    out.limit_R = std::abs(T.eigenvalues[0]) * std::exp(T.log_weight_offset);
    break;
  }
  return out;
}

BcReport bc_independence_check(double J, double beta, Complex h, const std::vector<int>& lengths, int x) {
  require(h.real() > 0, "boundary-condition check needs Re h > 0");
  require(x >= 1, "separation must be positive");
  BcReport rep;
  rep.h = h;
  std::vector<double> xs, ys;
  for (int L : lengths) {
    require(L >= x + 2 && L <= 20, "chain length must be in [x + 2, 20]");
    SpinModel free = ising_model(LatticeSpec::chain(L, Boundary::Free), J, beta, h);
    SpinModel ring = ising_model(LatticeSpec::chain(L), J, beta, h);
    int c = (L - x - 1) / 2;
    BcRow row;
    row.L = L;
    row.free_value = ursell_moebius(free, {{c, c + x}, {}}).value;
    row.periodic_value = ursell_moebius(ring, {{0, x}, {}}).value;
    row.difference = std::abs(row.free_value - row.periodic_value);
    if (row.difference > 0) {
      xs.push_back(L);
      ys.push_back(std::log(row.difference));
    }
    rep.rows.push_back(row);
  }
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].difference < rep.rows[i - 1].difference) && rep.rows[i].difference != 0) rep.monotone = false;
  rep.rate = xs.size() >= 2 ? std::exp(fit_slope(xs, ys)) : 0;
  rep.final_gap = rep.rows.empty() ? 0 : rep.rows.back().difference;
  return rep;
}

DeltaProbe critical_exponent_probe(double J, double beta, const std::vector<int>& widths,
                                   const std::vector<double>& h_sequence) {
  if (J == 0) fail(ErrorCode::InvalidInput, "J = 0: correlation length vanishes identically, probe refuses");
  require(h_sequence.size() >= 2, "at least two h values are needed for a slope");
  for (double h : h_sequence) require(h > 0, "h sequence must be positive");
  DeltaProbe out;
  out.beta = beta;
  for (int w : widths) {
    DeltaFit fit;
    fit.width = w;
    std::vector<double> lx, ly;
    for (double h : h_sequence) {
      MassGap g = mass_gap(build_transfer(ising_strip(w, J, beta, h)));
      if (g.infinite) fail(ErrorCode::InvalidInput, "vanishing correlation length, probe refuses");
      fit.h.push_back(h);
      fit.xi.push_back(1 / g.m);
      lx.push_back(std::log(h));
      ly.push_back(-std::log(g.m));
    }
    fit.slope = fit_slope(lx, ly);
    out.fits.push_back(std::move(fit));
  }
  bool up = true, down = true;
  for (std::size_t i = 1; i < out.fits.size(); ++i) {
    up = up && out.fits[i].slope >= out.fits[i - 1].slope;
    down = down && out.fits[i].slope <= out.fits[i - 1].slope;
  }
  out.slope_trend_monotone = up || down;
  out.note = "finite strips are not critical; the delta <= 1 line is a reference, not a check";
  return out;
}

}  // namespace lylab
