#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "lylab/error.hpp"
#include "lylab/thermo.hpp"

namespace lylab {

double TransferOperator::gap_ratio() const {
  if (eigenvalues.size() < 2) return 0;
  return std::abs(eigenvalues[1]) / std::abs(eigenvalues[0]);
}

TransferOperator build_transfer(const SpinModel& model, Complex h) {
  return build_transfer(model.with_field(FieldSpec::uniform(h)));
}

TransferOperator build_transfer(const SpinModel& model) {
  const auto& lat = model.lattice();
  const auto& m = model.measure();
  if (m.kind() != MeasureKind::Atoms) fail(ErrorCode::Unsupported, "transfer matrices need a finite single-spin state space");
  if (lat.dimension() > 2) fail(ErrorCode::Unsupported, "transfer matrices cover chains and 2D strips");
  require(lat.boundary == Boundary::Periodic, "transfer matrices describe rings: periodic boundary required");
  require(lat.extents[0] >= 3, "at least 3 rows are needed to read off row-to-row couplings");
  require(!model.interaction().has_quartic(), "transfer matrices take pair couplings only");
  const int rows = lat.extents[0];
  const int w = lat.dimension() == 2 ? lat.extents[1] : 1;
  if (w > kMaxTransferWidth) fail(ErrorCode::SizeOverflow, "strip width above 8");
  const auto& atoms = m.atom_list();
  const int q = static_cast<int>(atoms.size());
  double wmin = INFINITY;
  for (const auto& a : atoms) {
    require(a.weight > 0, "transfer matrices need positive atom weights");
    wmin = std::min(wmin, a.weight);
  }
  long long dim = 1;
  for (int c = 0; c < w; ++c) {
    dim *= q;
    if (dim > kMaxTransferStates) fail(ErrorCode::SizeOverflow, "transfer state dimension above 4096");
  }

  const auto& I = model.interaction();
  auto h = effective_fields(model);
  // row translation invariance, and no couplings beyond adjacent rows
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < w; ++c) {
      int x = r * w + c;
      require(h[x] == h[c], "fields must be identical on every row");
      for (int r2 = 0; r2 < rows; ++r2)
        for (int c2 = 0; c2 < w; ++c2) {
          int y = r2 * w + c2;
          int dr = ((r2 - r) % rows + rows) % rows;
          double expect = 0;
          if (dr == 0) expect = I.pair(c, c2);
          else if (dr == 1) expect = I.pair(c, w + c2);
          else if (dr == rows - 1) expect = I.pair(w + c, c2);
          else require(I.pair(x, y) == 0, "couplings beyond adjacent rows");
          require(std::abs(I.pair(x, y) - expect) <= 1e-15 * (1 + std::abs(expect)),
                  "couplings must be translation invariant along the rows");
        }
    }

  TransferOperator T;
  T.width = w;
  T.states_per_site = q;
  T.beta = model.beta();
  T.h = h[0];
  T.log_weight_offset = w * std::log(wmin);
  const int d = static_cast<int>(dim);
  std::vector<std::vector<int>> config(d, std::vector<int>(w));
  for (int s = 0; s < d; ++s) {
    int t = s;
    for (int c = w - 1; c >= 0; --c) {
      config[s][c] = t % q;
      t /= q;
    }
  }
  std::vector<Complex> half(d);
  T.row_spin.resize(d);
  for (int s = 0; s < d; ++s) {
    Complex e = 0;
    double lw = 0;
    for (int c = 0; c < w; ++c) {
      double sc = atoms[config[s][c]].location;
      lw += std::log(atoms[config[s][c]].weight / wmin);
      e += h[c] * sc;
      for (int c2 = c + 1; c2 < w; ++c2) e += I.pair(c, c2) * sc * atoms[config[s][c2]].location;
    }
    half[s] = 0.5 * (T.beta * e + lw);
    T.row_spin[s] = atoms[config[s][0]].location;
  }
  T.matrix.resize(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double link = 0;
      for (int c = 0; c < w; ++c)
        for (int c2 = 0; c2 < w; ++c2)
          link += I.pair(c, w + c2) * atoms[config[a][c]].location * atoms[config[b][c2]].location;
      T.matrix(a, b) = std::exp(half[a] + half[b] + T.beta * link);
    }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(T.matrix, true);
  if (es.info() != Eigen::Success) fail(ErrorCode::RootNonConvergence, "transfer eigensolve failed");
  std::vector<int> order(d);
  for (int i = 0; i < d; ++i) order[i] = i;
  const auto& ev = es.eigenvalues();
  double top = ev.cwiseAbs().maxCoeff();
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    double ai = std::abs(ev[i]), aj = std::abs(ev[j]);
    if (std::abs(ai - aj) > 1e-12 * top) return ai > aj;
    return std::arg(ev[i]) < std::arg(ev[j]);
  });
  for (int i : order) T.eigenvalues.push_back(ev[i]);
  T.v1 = es.eigenvectors().col(order[0]);
  if (d > 1) T.v2 = es.eigenvectors().col(order[1]);
  return T;
}

ComplexLD log_ring_partition(const TransferOperator& T, int L) {
  require(L >= 1, "ring length must be positive");
  using MatLD = Eigen::Matrix<ComplexLD, Eigen::Dynamic, Eigen::Dynamic>;
  Complex l1 = T.eigenvalues[0];
  MatLD M = (T.matrix / l1).cast<ComplexLD>();
  MatLD P = MatLD::Identity(M.rows(), M.cols());
  for (int e = L; e > 0; e >>= 1) {
    if (e & 1) P = P * M;
    if (e > 1) M = M * M;
  }
  ComplexLD lam(l1.real(), l1.imag());
  return static_cast<long double>(L) * (std::log(lam) + static_cast<long double>(T.log_weight_offset)) +
         std::log(P.trace());
}

SpinModel ising_strip(int width, double J, double beta, Complex h) {
  require(width >= 1 && width <= kMaxTransferWidth, "strip width must be 1..8");
  if (width == 1) return ising_model(LatticeSpec::chain(3), J, beta, h);
  return ising_model(LatticeSpec::square(3, width), J, beta, h);
}

FreeEnergy free_energy_density(const TransferOperator& T, int max_L) {
  require(max_L >= 1, "max_L must be positive");
  FreeEnergy out;
  out.predicted_rate = T.gap_ratio();
  if (out.predicted_rate > 1 - 1e-8)
    fail(ErrorCode::EigenvalueCrossing, "|lambda_2| ~ |lambda_1|: no thermodynamic limit diagnostic");
  const double bw = T.beta * T.width;
  out.f_inf = -std::log(T.eigenvalues[0]) / bw;
  std::vector<double> xs, ys;
  for (int L = 1; L <= max_L; ++L) {
    ComplexLD lz = log_ring_partition(T, L) - static_cast<long double>(L * T.log_weight_offset);
    Complex fL = Complex(static_cast<double>(lz.real()), static_cast<double>(lz.imag())) / (-bw * L);
    out.L.push_back(L);
    out.f_L.push_back(fL);
    // L beta w (f_inf - f_L) = log tr (T / lambda_1)^L
    double d = std::abs(fL - out.f_inf) * bw * L;
    if (L >= 2 && d > 1e-13 * std::max(1.0, std::abs(out.f_inf) * bw * L)) {
      xs.push_back(L);
      ys.push_back(std::log(d));
    }
  }
  if (xs.size() >= 3) {
    // fit the tail half of the usable range
    std::size_t from = xs.size() / 2;
    double n = xs.size() - from, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = from; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.observed_rate = std::exp(slope);
  }
  return out;
}

MassGap mass_gap(const TransferOperator& T) {
  MassGap g;
  g.ratio = T.gap_ratio();
  if (g.ratio < 1e-14) {
    g.infinite = true;
    g.m = INFINITY;
    return g;
  }
  g.m = -std::log(g.ratio);
  return g;
}

}  // namespace lylab
