#include "lylab/polyengine.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include "lylab/config.hpp"
#include "lylab/error.hpp"

namespace lylab {

namespace {

Quad quad_exp(long double x) { return boost::multiprecision::exp(Quad(x)); }

void require_ising(const SpinModel& model) {
  if (!model.measure().is_ising()) fail(ErrorCode::InvalidInput, "activity polynomials need the +-1 Ising measure");
  if (model.sites() > kMaxPolynomialSites)
    fail(ErrorCode::SizeOverflow, "activity polynomial limited to " + std::to_string(kMaxPolynomialSites) + " sites");
}

struct SignedTerm {
  std::uint32_t mask;
  long double J;
};

// beta * sum_terms J * prod_{x in term} s_x with s = -1 on X
std::vector<Quad> boltzmann_table(int n, double beta, const std::vector<SignedTerm>& terms, int jobs) {
  std::size_t size = std::size_t{1} << n;
  std::vector<Quad> out(size);
  const std::size_t blocks = 256;
  parallel_for(std::min(blocks, size), jobs, [&](std::size_t b) {
    std::size_t nb = std::min(blocks, size);
    std::size_t lo = size * b / nb, hi = size * (b + 1) / nb;
    for (std::size_t X = lo; X < hi; ++X) {
      long double e = 0;
      for (const auto& t : terms) e += (std::popcount(static_cast<std::uint32_t>(X) & t.mask) & 1) ? -t.J : t.J;
      out[X] = quad_exp(static_cast<long double>(beta) * e);
    }
  });
  return out;
}

}  // namespace

ActivityPolynomial::ActivityPolynomial(int nvars, std::vector<Quad> coeffs) : nvars_(nvars), coeffs_(std::move(coeffs)) {
  require(nvars >= 0 && nvars <= kMaxPolynomialSites, "polynomial variable count out of range");
  require(coeffs_.size() == (std::size_t{1} << nvars), "coefficient array must have 2^nvars entries");
}

std::vector<Quad> ActivityPolynomial::uniform_reduction() const {
  std::vector<Quad> a(nvars_ + 1, Quad(0));
  for (std::size_t X = 0; X < coeffs_.size(); ++X) a[std::popcount(static_cast<std::uint32_t>(X))] += coeffs_[X];
  return a;
}

ComplexLD ActivityPolynomial::evaluate(std::span<const ComplexLD> z) const {
  require(static_cast<int>(z.size()) == nvars_, "evaluation point has the wrong number of variables");
  std::vector<ComplexLD> a(coeffs_.size());
  for (std::size_t X = 0; X < a.size(); ++X) a[X] = static_cast<long double>(coeffs_[X]);
  for (int v = nvars_ - 1; v >= 0; --v) {
    std::size_t half = std::size_t{1} << v;
    for (std::size_t X = 0; X < half; ++X) a[X] += z[v] * a[X + half];
  }
  return a[0];
}

ComplexLD ActivityPolynomial::evaluate_uniform(ComplexLD z) const {
  std::vector<ComplexLD> zs(nvars_, z);
  return evaluate(zs);
}

ComplexLD ActivityPolynomial::partition_value(std::span<const Complex> h) const {
  require(static_cast<int>(h.size()) == nvars_, "field vector has the wrong length");
  std::vector<ComplexLD> z(nvars_);
  ComplexLD pref = 1;
  long double ratio = static_cast<long double>(weight_minus) / weight_plus;
  for (int x = 0; x < nvars_; ++x) {
    ComplexLD bh = static_cast<long double>(beta) * ComplexLD(h[x].real(), h[x].imag());
    z[x] = ratio * std::exp(-2.0L * bh);
    pref *= static_cast<long double>(weight_plus) * std::exp(bh);
  }
  return pref * evaluate(z);
}

double ActivityPolynomial::symmetry_defect() const {
  std::size_t full = coeffs_.size() - 1;
  Quad worst = 0, scale = 0;
  for (std::size_t X = 0; X < coeffs_.size(); ++X) {
    worst = std::max(worst, Quad(abs(coeffs_[X] - coeffs_[X ^ full])));
    scale = std::max(scale, Quad(abs(coeffs_[X])));
  }
  return scale > 0 ? static_cast<double>(worst / scale) : 0.0;
}

bool ActivityPolynomial::all_positive() const {
  for (const auto& c : coeffs_)
    if (!(c > 0)) return false;
  return true;
}

ActivityPolynomial partition_polynomial(const SpinModel& model, int jobs) {
  require_ising(model);
  int n = model.sites();
  const auto& I = model.interaction();
  std::vector<SignedTerm> terms;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (I.pair(x, y) != 0) terms.push_back({(1u << x) | (1u << y), I.pair(x, y)});
  for (const auto& q : I.quartic())
    if (q.J != 0)
      terms.push_back({(1u << q.sites[0]) | (1u << q.sites[1]) | (1u << q.sites[2]) | (1u << q.sites[3]), q.J});
  ActivityPolynomial P(n, boltzmann_table(n, model.beta(), terms, jobs));
  P.beta = model.beta();
  P.model_hash = model_hash(model);
  for (const auto& a : model.measure().atom_list()) (a.location > 0 ? P.weight_plus : P.weight_minus) = a.weight;
  return P;
}

Complex evaluate_partition(const SpinModel& model, const EngineOptions& options, Precision precision) {
  PartitionEngine engine(model, options);
  return engine.evaluate(precision, engine.model_fields());
}

ActivityPolynomial schur_hadamard(const ActivityPolynomial& P, const ActivityPolynomial& Q) {
  require(P.nvars() == Q.nvars(), "Schur-Hadamard product needs equal variable counts");
  std::vector<Quad> c(P.size());
  for (std::size_t X = 0; X < c.size(); ++X) c[X] = P[X] * Q[X];
  ActivityPolynomial R(P.nvars(), std::move(c));
  R.beta = P.beta;
  R.weight_plus = P.weight_plus;
  R.weight_minus = P.weight_minus;
  return R;
}

ActivityPolynomial tensor_product(const ActivityPolynomial& P, const ActivityPolynomial& Q) {
  int n = P.nvars() + Q.nvars();
  if (n > kMaxPolynomialSites) fail(ErrorCode::SizeOverflow, "tensor product too large");
  std::vector<Quad> c(std::size_t{1} << n);
  for (std::size_t Y = 0; Y < Q.size(); ++Y)
    for (std::size_t X = 0; X < P.size(); ++X) c[X | (Y << P.nvars())] = P[X] * Q[Y];
  ActivityPolynomial R(n, std::move(c));
  R.beta = P.beta;
  return R;
}

ActivityPolynomial asano_contract(const ActivityPolynomial& P, int i, int j) {
  int n = P.nvars();
  require(i != j && i >= 0 && j >= 0 && i < n && j < n, "Asano contraction needs two distinct valid variables");
  int lo = std::min(i, j), hi = std::max(i, j);
  int m = n - 1;
  std::vector<Quad> c(std::size_t{1} << m);
  for (std::size_t Y = 0; Y < c.size(); ++Y) {
    // expand Y (w at lo) back to P's variables, dropping index hi
    std::size_t below = Y & ((std::size_t{1} << hi) - 1);
    std::size_t above = (Y >> hi) << (hi + 1);
    std::size_t X = below | above;
    if (Y & (std::size_t{1} << lo)) X |= (std::size_t{1} << hi);  // D: both set
    c[Y] = P[static_cast<std::uint32_t>(X)];
  }
  ActivityPolynomial R(m, std::move(c));
  R.beta = P.beta;
  return R;
}

QuarticDecomposition quartic_decomposition(const SpinModel& model) {
  require_ising(model);
  int n = model.sites();
  const auto& I = model.interaction();
  std::map<std::pair<int, int>, double> pair_tilde;
  double jtilde0 = 0;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (I.pair(x, y) != 0) {
        pair_tilde[{x, y}] += 2 * I.pair(x, y);
        jtilde0 -= I.pair(x, y);
      }
  QuarticDecomposition d;
  for (const auto& q : I.quartic()) {
    if (q.J == 0) continue;
    d.quartic_tilde.push_back({q.sites, 8 * q.J});
    jtilde0 += 5 * q.J;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) pair_tilde[{q.sites[a], q.sites[b]}] -= 2 * q.J;
  }
  for (const auto& [k, v] : pair_tilde)
    if (v != 0) d.pair_tilde.push_back({k.first, k.second, v});
  d.jtilde0 = jtilde0;

  // E^(k)_X = prod over k-sets U inside X or inside its complement of exp(beta Jtilde_U)
  auto factor = [&](const std::vector<std::pair<std::uint32_t, double>>& sets) {
    std::vector<Quad> c(std::size_t{1} << n);
    std::uint32_t full = static_cast<std::uint32_t>((std::size_t{1} << n) - 1);
    for (std::size_t X = 0; X < c.size(); ++X) {
      long double e = 0;
      std::uint32_t x = static_cast<std::uint32_t>(X);
      for (const auto& [U, J] : sets)
        if ((x & U) == U || ((full ^ x) & U) == U) e += J;
      c[X] = quad_exp(static_cast<long double>(model.beta()) * e);
    }
    ActivityPolynomial P(n, std::move(c));
    P.beta = model.beta();
    return P;
  };
  std::vector<std::pair<std::uint32_t, double>> pairs, quads;
  for (const auto& p : d.pair_tilde) pairs.push_back({(1u << p.x) | (1u << p.y), p.J});
  for (const auto& q : d.quartic_tilde)
    quads.push_back({(1u << q.sites[0]) | (1u << q.sites[1]) | (1u << q.sites[2]) | (1u << q.sites[3]), q.J});
  d.z2 = factor(pairs);
  d.z4 = factor(quads);

  ActivityPolynomial direct = partition_polynomial(model);
  ActivityPolynomial prod = schur_hadamard(d.z2, d.z4);
  Quad shift = quad_exp(static_cast<long double>(model.beta()) * jtilde0);
  Quad worst = 0;
  for (std::size_t X = 0; X < direct.size(); ++X)
    worst = std::max(worst, Quad(abs(shift * prod[X] - direct[X]) / direct[X]));
  d.reconstruction_error = static_cast<double>(worst);
  return d;
}

QuarticConditions check_quartic_ly_conditions(const SpinModel& model) {
  QuarticConditions c;
  const auto& I = model.interaction();
  const double ln2 = std::log(2.0);
  for (const auto& q : I.quartic()) {
    if (q.J == 0 || 8 * model.beta() * q.J >= ln2) continue;
    c.condition1 = false;
    std::ostringstream os;
    os << "8*beta*J < ln 2 on {" << q.sites[0] << "," << q.sites[1] << "," << q.sites[2] << "," << q.sites[3]
       << "}";
    c.failures.push_back(os.str());
  }
  int n = model.sites();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      double cover = 0;
      for (const auto& q : I.quartic()) {
        bool hx = false, hy = false;
        for (int s : q.sites) hx |= (s == x), hy |= (s == y);
        if (hx && hy) cover += q.J;
      }
      if (I.pair(x, y) >= cover) continue;
      c.condition2 = false;
      std::ostringstream os;
      os << "J_{" << x << "," << y << "} below the covering four-spin sum";
      c.failures.push_back(os.str());
    }
  return c;
}

nlohmann::json polynomial_to_json(const ActivityPolynomial& P) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::size_t X = 0; X < P.size(); ++X) coeffs.push_back({{"mask", X}, {"coeff", to_hex(P[X])}});
  return {{"format", "lylab-activity-polynomial"},
          {"nvars", P.nvars()},
          {"beta", to_hex(P.beta)},
          {"model_hash", hash_hex(P.model_hash)},
          {"weight_plus", to_hex(P.weight_plus)},
          {"weight_minus", to_hex(P.weight_minus)},
          {"coefficients", coeffs}};
}

ActivityPolynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    require(j.at("format") == "lylab-activity-polynomial", "not an activity polynomial document");
    int n = j.at("nvars").get<int>();
    require(n >= 0 && n <= kMaxPolynomialSites, "polynomial variable count out of range");
    std::vector<Quad> c(std::size_t{1} << n);
    std::vector<bool> seen(c.size(), false);
    for (const auto& e : j.at("coefficients")) {
      std::size_t mask = e.at("mask").get<std::size_t>();
      require(mask < c.size() && !seen[mask], "invalid or repeated coefficient mask");
      seen[mask] = true;
      c[mask] = hex_to_quad(e.at("coeff").get<std::string>());
    }
    for (bool s : seen) require(s, "missing coefficient");
    ActivityPolynomial P(n, std::move(c));
    P.beta = hex_to_double(j.at("beta").get<std::string>());
    P.model_hash = std::stoull(j.at("model_hash").get<std::string>(), nullptr, 16);
    P.weight_plus = hex_to_double(j.at("weight_plus").get<std::string>());
    P.weight_minus = hex_to_double(j.at("weight_minus").get<std::string>());
    return P;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("polynomial document: ") + e.what());
  }
}

}  // namespace lylab
