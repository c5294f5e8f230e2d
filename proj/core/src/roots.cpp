#include "lylab/roots.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "lylab/error.hpp"

namespace lylab {

namespace {

template <class R>
struct Arith;

template <>
struct Arith<double> {
  using C = std::complex<double>;
  static double abs(const C& z) { return std::abs(z); }
  static C make(double re, double im) { return {re, im}; }
  static double eps() { return 1e-15; }
  static double residual_target() { return 1e-13; }
  static ComplexLD to_ld(const C& z) { return {z.real(), z.imag()}; }
};

template <>
struct Arith<Quad> {
  using C = ComplexQuad;
  static Quad abs(const C& z) { return boost::multiprecision::abs(z); }
  static C make(double re, double im) { return C(Quad(re), Quad(im)); }
  static Quad eps() { return Quad(1e-31); }
  static double residual_target() { return 1e-20; }
  static ComplexLD to_ld(const C& z) {
    return {static_cast<long double>(z.real()), static_cast<long double>(z.imag())};
  }
};

std::vector<std::complex<double>> initial_guesses(const std::vector<double>& a) {
  int n = static_cast<int>(a.size()) - 1;
  std::vector<std::complex<double>> z;
  bool finite = true;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double c = -a[k] / a[n];
    finite = finite && std::isfinite(c);
    comp(0, n - 1 - k) = c;
  }
  for (int k = 1; k < n; ++k) comp(k, k - 1) = 1;
  if (finite) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    if (es.info() == Eigen::Success) {
      for (int k = 0; k < n; ++k) z.push_back(es.eigenvalues()[k]);
      // Aberth needs distinct starting points
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < k; ++j)
          if (std::abs(z[k] - z[j]) < 1e-12 * (1 + std::abs(z[k])))
            z[k] += std::polar(1e-6 * (1 + std::abs(z[k])), 0.7 + k);
      bool ok = true;
      for (auto& v : z) ok = ok && std::isfinite(v.real()) && std::isfinite(v.imag());
      if (ok) return z;
    }
  }
  z.clear();
  double r = 0;
  for (int k = 0; k < n; ++k) r = std::max(r, std::pow(std::fabs(a[k] / a[n]), 1.0 / (n - k)));
  if (!(r > 0) || !std::isfinite(r)) r = 1;
  for (int k = 0; k < n; ++k) z.push_back(std::polar(r, 2 * std::numbers::pi * (k + 0.25) / n));
  return z;
}

// A multiple root of order m is a simple root of p^(m-1); Newton on that
// derivative pins the cluster centre far below the cluster spread.
template <class R, class C>
C refine_multiple(const std::vector<R>& a, int m, C x) {
  using A = Arith<R>;
  int n = static_cast<int>(a.size()) - 1;
  std::vector<R> d(a.begin() + (m - 1), a.end());
  for (int k = 0; k < static_cast<int>(d.size()); ++k)
    for (int f = k + 1; f <= k + m - 1; ++f) d[k] *= R(f);
  int deg = n - m + 1;
  C start = x;
  for (int it = 0; it < 100; ++it) {
    C p = C(d[deg]), dp = C(R(0));
    for (int k = deg - 1; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + C(d[k]);
    }
    if (A::abs(dp) == R(0)) break;
    C step = p / dp;
    x -= step;
    if (A::abs(step) <= A::eps() * (R(1) + A::abs(x))) break;
  }
  // keep the plain centroid if Newton wandered off
  if (!(A::abs(x - start) <= R(1e-2) * (R(1) + A::abs(start)))) return start;
  return x;
}

template <class R>
RootResult aberth(const std::vector<R>& a, Precision precision) {
  using A = Arith<R>;
  using C = typename A::C;
  int n = static_cast<int>(a.size()) - 1;
  require(n >= 1, "root finding needs degree >= 1");
  require(a[n] != R(0), "leading coefficient must be nonzero");

  std::vector<double> ad(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) ad[k] = static_cast<double>(a[k]);
  auto guesses = initial_guesses(ad);
  std::vector<C> z(n);
  for (int k = 0; k < n; ++k) z[k] = A::make(guesses[k].real(), guesses[k].imag());

  auto eval = [&](const C& x, C& p, C& dp, R& scale) {
    p = C(a[n]);
    dp = C(R(0));
    scale = abs(a[n]);
    R ax = A::abs(x);
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + C(a[k]);
      scale = scale * ax + abs(a[k]);
    }
  };

  RootResult result;
  result.precision = precision;
  std::vector<bool> done(n, false);
  const int cap = 1000;
  int it = 0;
  for (; it < cap; ++it) {
    bool all = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      C p, dp;
      R scale;
      eval(z[k], p, dp, scale);
      if (A::abs(p) <= A::eps() * R(1e-3) * scale) {
        done[k] = true;
        continue;
      }
      C ratio = p / dp;
      C sum = C(R(0));
      for (int j = 0; j < n; ++j)
        if (j != k) sum += C(R(1)) / (z[k] - z[j]);
      C w = ratio / (C(R(1)) - ratio * sum);
      z[k] -= w;
      if (A::abs(w) <= A::eps() * (R(1) + A::abs(z[k]))) done[k] = true;
      else all = false;
    }
    if (all) break;
  }
  result.iterations = it + 1;

  result.roots.resize(n);
  for (int k = 0; k < n; ++k) {
    auto& r = result.roots[k];
    C p, dp;
    R scale;
    eval(z[k], p, dp, scale);
    C prod = C(a[n]);
    for (int j = 0; j < n; ++j)
      if (j != k) prod *= (z[k] - z[j]);
    R mod = A::abs(z[k]);
    r.z = A::to_ld(z[k]);
    r.modulus = static_cast<double>(mod);
    r.modulus_deviation = static_cast<double>(abs(mod - R(1)));
    r.residual = scale > 0 ? static_cast<double>(A::abs(p) / scale) : 0.0;
    R den = A::abs(prod);
    r.inclusion_radius = den > 0 ? static_cast<double>(R(n) * A::abs(p) / den) : INFINITY;
    r.converged = r.residual <= A::residual_target();
  }

  // clusters by overlapping inclusion disks (union-find)
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      R d = A::abs(z[i] - z[j]);
      if (d <= R(result.roots[i].inclusion_radius + result.roots[j].inclusion_radius)) parent[find(i)] = find(j);
    }
  std::vector<int> label(n, -1);
  for (int i = 0; i < n; ++i) {
    int root = find(i);
    if (label[root] < 0) {
      label[root] = static_cast<int>(result.clusters.size());
      result.clusters.push_back({});
      result.clusters.back().multiplicity = 0;
    }
    result.roots[i].cluster = label[root];
  }
  std::vector<C> sums(result.clusters.size(), C(R(0)));
  for (int i = 0; i < n; ++i) {
    sums[result.roots[i].cluster] += z[i];
    result.clusters[result.roots[i].cluster].multiplicity++;
  }
  for (std::size_t c = 0; c < result.clusters.size(); ++c) {
    auto& cl = result.clusters[c];
    C centroid = sums[c] / C(R(cl.multiplicity));
    if (cl.multiplicity > 1) centroid = refine_multiple(a, cl.multiplicity, centroid);
    cl.centroid = A::to_ld(centroid);
    cl.centroid_deviation = static_cast<double>(abs(A::abs(centroid) - R(1)));
    R rad = 0;
    for (int i = 0; i < n; ++i)
      if (result.roots[i].cluster == static_cast<int>(c)) rad = std::max(rad, A::abs(z[i] - centroid));
    cl.radius = static_cast<double>(rad);
  }
  result.converged = true;
  for (const auto& r : result.roots) result.converged = result.converged && r.converged;
  return result;
}

}  // namespace

double RootResult::max_circle_deviation() const {
  double m = 0;
  for (const auto& c : clusters) m = std::max(m, c.centroid_deviation);
  return m;
}

RootResult roots_activity(const std::vector<Quad>& coeffs, Precision precision) {
  if (precision == Precision::Double) {
    std::vector<double> d(coeffs.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = static_cast<double>(coeffs[k]);
    return aberth<double>(d, precision);
  }
  return aberth<Quad>(coeffs, precision);
}

RootResult roots_activity(const std::vector<double>& coeffs, Precision precision) {
  if (precision == Precision::Double) return aberth<double>(coeffs, precision);
  std::vector<Quad> q(coeffs.begin(), coeffs.end());
  return aberth<Quad>(q, precision);
}

}  // namespace lylab
