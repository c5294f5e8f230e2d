#include "lylab/quantum.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "lylab/error.hpp"
#include "lylab/polyengine.hpp"

namespace lylab {

namespace {

int spin_dim(double s) {
  double two_s = 2 * s;
  require(s > 0 && std::abs(two_s - std::round(two_s)) < 1e-12, "spin must be a positive half-integer");
  return static_cast<int>(std::round(two_s)) + 1;
}

}  // namespace

std::uint64_t quantum_hash(const QuantumModel& qm) {
  nlohmann::json j;
  j["sites"] = qm.sites;
  j["s"] = to_hex(qm.s);
  j["beta"] = to_hex(qm.beta);
  for (int i = 0; i < 3; ++i)
    for (int x = 0; x < qm.sites; ++x)
      for (int y = x + 1; y < qm.sites; ++y) j["J"].push_back(to_hex(qm.J[i](x, y)));
  for (const auto& f : qm.h)
    for (auto c : f) j["h"].push_back({to_hex(c.real()), to_hex(c.imag())});
  return fnv1a(j.dump());
}

SpinOperators SpinOperators::make(double s) {
  const int d = spin_dim(s);
  SpinOperators ops;
  ops.s = s;
  Eigen::MatrixXcd plus = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(d, d);
  // basis k <-> m = s - k
  for (int k = 0; k < d; ++k) {
    double m = s - k;
    z(k, k) = m;
    if (k > 0) plus(k - 1, k) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  Eigen::MatrixXcd minus = plus.adjoint();
  ops.sigma[0] = 0.5 * (plus + minus);
  ops.sigma[1] = Complex(0, -0.5) * (plus - minus);
  ops.sigma[2] = z;
  return ops;
}

double SpinOperators::commutator_residual() const {
  double worst = 0;
  for (int j = 0; j < 3; ++j) {
    int k = (j + 1) % 3, l = (j + 2) % 3;
    Eigen::MatrixXcd c = sigma[j] * sigma[k] - sigma[k] * sigma[j] - Complex(0, 1) * sigma[l];
    worst = std::max(worst, c.cwiseAbs().maxCoeff());
  }
  return worst;
}

QuantumModel QuantumModel::make(int sites, double s, double beta) {
  require(sites >= 1, "at least one site");
  QuantumModel qm;
  qm.sites = sites;
  qm.s = s;
  qm.beta = beta;
  for (auto& m : qm.J) m = Eigen::MatrixXd::Zero(sites, sites);
  qm.h.assign(sites, {Complex(0), Complex(0), Complex(0)});
  qm.validate();
  return qm;
}

QuantumModel QuantumModel::all_to_all(int sites, double s, double beta, std::array<double, 3> J) {
  QuantumModel qm = make(sites, s, beta);
  for (int i = 0; i < 3; ++i)
    for (int x = 0; x < sites; ++x)
      for (int y = 0; y < sites; ++y)
        if (x != y) qm.J[i](x, y) = J[i];
  return qm;
}

void QuantumModel::set_uniform_field(std::array<Complex, 3> field) { h.assign(sites, field); }

long long QuantumModel::dimension() const {
  long long d = 1;
  const int q = spin_dim(s);
  for (int x = 0; x < sites; ++x) {
    d *= q;
    if (d > kMaxQuantumDimension) return d;
  }
  return d;
}

bool QuantumModel::ferromagnetic() const {
  for (int x = 0; x < sites; ++x)
    for (int y = x + 1; y < sites; ++y)
      if (J[0](x, y) < std::abs(J[1](x, y)) || J[0](x, y) < std::abs(J[2](x, y))) return false;
  return true;
}

void QuantumModel::validate() const {
  require(sites >= 1, "at least one site");
  spin_dim(s);
  require(beta > 0, "beta must be positive");
  if (dimension() > kMaxQuantumDimension) fail(ErrorCode::SizeOverflow, "Hilbert dimension above 4096");
  require(static_cast<int>(h.size()) == sites, "one field vector per site");
  for (const auto& m : J) {
    require(m.rows() == sites && m.cols() == sites, "coupling matrices must be sites x sites");
    for (int x = 0; x < sites; ++x) {
      require(m(x, x) == 0, "couplings have zero diagonal");
      for (int y = 0; y < sites; ++y) require(m(x, y) == m(y, x), "couplings must be symmetric");
    }
  }
}

Eigen::MatrixXcd quantum_hamiltonian(const QuantumModel& qm) {
  qm.validate();
  const int q = spin_dim(qm.s);
  const int n = qm.sites;
  const int D = static_cast<int>(qm.dimension());
  SpinOperators ops = SpinOperators::make(qm.s);
  // site 0 is the most significant digit
  std::vector<int> stride(n);
  for (int x = n - 1, st = 1; x >= 0; --x, st *= q) stride[x] = st;
  auto digit = [&](int b, int x) { return (b / stride[x]) % q; };
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(D, D);
  for (int b = 0; b < D; ++b)
    for (int x = 0; x < n; ++x) {
      int kx = digit(b, x);
      for (int i = 0; i < 3; ++i) {
        if (qm.h[x][i] == Complex(0)) continue;
        for (int k2 = 0; k2 < q; ++k2) {
          Complex e = ops.sigma[i](k2, kx);
          if (e != Complex(0)) H(b + (k2 - kx) * stride[x], b) -= qm.h[x][i] * e;
        }
      }
      for (int y = x + 1; y < n; ++y) {
        int ky = digit(b, y);
        for (int i = 0; i < 3; ++i) {
          double J = qm.J[i](x, y);
          if (J == 0) continue;
          for (int a2 = 0; a2 < q; ++a2) {
            Complex ex = ops.sigma[i](a2, kx);
            if (ex == Complex(0)) continue;
            for (int b2 = 0; b2 < q; ++b2) {
              Complex ey = ops.sigma[i](b2, ky);
              if (ey == Complex(0)) continue;
              H(b + (a2 - kx) * stride[x] + (b2 - ky) * stride[y], b) -= J * ex * ey;
            }
          }
        }
      }
    }
  return H;
}

QuantumPartition quantum_partition(const QuantumModel& qm) {
  Eigen::MatrixXcd H = quantum_hamiltonian(qm);
  const int D = static_cast<int>(H.rows());
  const double beta = qm.beta;
  QuantumPartition out;
  double norm1 = H.cwiseAbs().colwise().sum().maxCoeff();
  out.conditioning_warning = beta * norm1 > 50;
  bool hermitian = (H - H.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, norm1);
  if (hermitian) {
    out.method = "eigen";
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(ErrorCode::RootNonConvergence, "Hamiltonian eigensolve failed");
    const auto& E = es.eigenvalues();
    long double e0 = E.minCoeff(), sum = 0;
    for (int k = 0; k < D; ++k) sum += std::exp(-static_cast<long double>(beta) * (E[k] - e0));
    long double v = sum / D * std::exp(-static_cast<long double>(beta) * e0);
    out.value = static_cast<double>(v);
    return out;
  }
  out.method = "pade";
  // Gershgorin lower bound on Re spectrum keeps exp(-beta (H - c)) bounded
  double c = INFINITY;
  for (int k = 0; k < D; ++k) c = std::min(c, H(k, k).real() - (H.col(k).cwiseAbs().sum() - std::abs(H(k, k))));
  Eigen::MatrixXcd A = -beta * (H - c * Eigen::MatrixXcd::Identity(D, D));
  ComplexLD tr;
  if (D <= 512) {
    using MatLD = Eigen::Matrix<ComplexLD, Eigen::Dynamic, Eigen::Dynamic>;
    MatLD E = A.cast<ComplexLD>().exp();
    tr = E.trace();
  } else {
    Eigen::MatrixXcd E = A.exp();
    Complex t = E.trace();
    tr = ComplexLD(t.real(), t.imag());
  }
  ComplexLD v = tr / static_cast<long double>(D) * std::exp(-static_cast<long double>(beta) * c);
  out.value = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  return out;
}

QuantumModel rescaled(const QuantumModel& qm) {
  QuantumModel r = qm;
  for (auto& m : r.J) m /= qm.s * qm.s;
  for (auto& f : r.h)
    for (auto& c : f) c /= qm.s;
  return r;
}

QuantumPartition rescaled_partition(const QuantumModel& qm) { return quantum_partition(rescaled(qm)); }

LimitStudy classical_limit_study(const QuantumModel& base, const LimitOptions& options) {
  LimitStudy out;
  std::vector<double> svals = options.s_values;
  if (svals.empty())
    for (int k = 1; k <= 16; ++k) svals.push_back(0.5 * k);
  out.t_grid = options.t_grid;
  if (out.t_grid.empty())
    for (int k = 0; k < 20; ++k) out.t_grid.push_back(0.1 + 1.9 * k / 19);
  const int n = base.sites;
  const auto& dir = options.direction;

  Interaction I = Interaction::dense(n, 3);
  for (int i = 0; i < 3; ++i)
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) I.set_pair(x, y, base.J[i](x, y), i);
  const std::size_t nt = out.t_grid.size();
  out.classical.resize(nt);
  parallel_for(nt, options.jobs, [&](std::size_t k) {
    double t = out.t_grid[k];
    FieldSpec f = FieldSpec::uniform(t * dir[0]);
    f.transverse = {t * dir[1], t * dir[2]};
    SpinModel cm(LatticeSpec::chain(n, Boundary::Free), SingleSpinMeasure::sphere_uniform(3), I, f, base.beta);
    out.classical[k] = evaluate_partition(cm).real();
  });

  std::vector<double> dev(svals.size() * nt);
  parallel_for(dev.size(), options.jobs, [&](std::size_t idx) {
    QuantumModel qm = base;
    qm.s = svals[idx / nt];
    double t = out.t_grid[idx % nt];
    qm.set_uniform_field({t * dir[0], t * dir[1], t * dir[2]});
    dev[idx] = std::abs(rescaled_partition(qm).value - out.classical[idx % nt]);
  });
  for (std::size_t si = 0; si < svals.size(); ++si) {
    LimitRow row;
    row.s = svals[si];
    for (std::size_t k = 0; k < nt; ++k)
      if (dev[si * nt + k] > row.sup_deviation) {
        row.sup_deviation = dev[si * nt + k];
        row.argmax_t = out.t_grid[k];
      }
    if (!out.rows.empty() && row.sup_deviation > out.rows.back().sup_deviation + options.slack) {
      out.nonincreasing = false;
      out.flags.push_back("sup deviation rises from s = " + format_g17(out.rows.back().s) + " to s = " +
                          format_g17(row.s));
    }
    out.rows.push_back(row);
  }
  if (!out.rows.empty() && out.rows.back().sup_deviation > 0)
    out.first_over_last = out.rows.front().sup_deviation / out.rows.back().sup_deviation;
  return out;
}

ScanReport quantum_zero_scan(const QuantumModel& qm, const GridSpec& grid, const QuantumScanOptions& options) {
  qm.validate();
  RegionSpec region = RegionSpec::omega_plus(3);
  ScanReport report;
  report.region = region.name();
  report.grid = grid.to_string();
  report.margin = options.margin;
  report.model_hash = quantum_hash(qm);
  report.precision = Precision::Extended;
  if (!qm.ferromagnetic()) report.notes.push_back("precondition violated: J^1 >= |J^2|, |J^3| fails");

  auto value = [&](const std::array<Complex, 3>& f) {
    QuantumModel m = qm;
    m.set_uniform_field(f);
    return quantum_partition(m).value;
  };
  std::vector<double> ref(grid.nre);
  parallel_for(grid.nre, options.jobs, [&](std::size_t i) {
    ref[i] = std::abs(value({Complex(grid.re(static_cast<int>(i))), Complex(0), Complex(0)}));
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
    auto tr = random_split(rng, 2, options.transverse_fraction * std::max(h.real(), 0.0));
    std::vector<Complex> hv{h, tr[0], tr[1]};
    Complex z = value({hv[0], hv[1], hv[2]});
    values[t] = ref[col] > 0 ? std::abs(z) / ref[col] : std::abs(z);
    inside[t] = region.contains_vector(hv);
    points[t] = std::move(hv);
  });
  for (std::size_t t = 0; t < total; ++t) scan_record(report, std::move(points[t]), values[t], inside[t] != 0);
  return report;
}

}  // namespace lylab
