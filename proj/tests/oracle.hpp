#pragma once

// Brute-force references for +-1 spin models. They read couplings and fields
// straight from the model data and sum every configuration in quad precision,
// sharing no code with the library's engines.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/complex128.hpp>

#include "lylab/model.hpp"

namespace oracle {

using CQ = boost::multiprecision::complex128;
using Q = boost::multiprecision::float128;

inline int spin(std::uint32_t config, int x) { return (config >> x & 1) ? -1 : 1; }

// -H for the configuration with bit x set meaning sigma_x = -1.
inline CQ minus_energy(const lylab::SpinModel& m, const std::vector<lylab::Complex>& h, std::uint32_t c) {
  const int n = m.sites();
  CQ e(0);
  for (int x = 0; x < n; ++x) {
    e += CQ(Q(h[x].real()), Q(h[x].imag())) * Q(spin(c, x));
    for (int y = x + 1; y < n; ++y) e += CQ(Q(m.interaction().pair(x, y)) * Q(spin(c, x) * spin(c, y)));
  }
  for (const auto& t : m.interaction().quartic()) {
    int p = 1;
    for (int s : t.sites) p *= spin(c, s);
    e += CQ(Q(t.J) * Q(p));
  }
  return e;
}

// Atom weights are 1/2 each (Ising measure).
inline CQ partition(const lylab::SpinModel& m) {
  auto h = lylab::effective_fields(m);
  CQ z(0);
  for (std::uint32_t c = 0; c < (1u << m.sites()); ++c) z += exp(CQ(Q(m.beta())) * minus_energy(m, h, c));
  return z * CQ(pow(Q(0.5), m.sites()));
}

// <prod_a sigma_{sites[a]}>
inline CQ moment(const lylab::SpinModel& m, const std::vector<int>& sites) {
  auto h = lylab::effective_fields(m);
  CQ z(0), num(0);
  for (std::uint32_t c = 0; c < (1u << m.sites()); ++c) {
    CQ w = exp(CQ(Q(m.beta())) * minus_energy(m, h, c));
    int p = 1;
    for (int s : sites) p *= spin(c, s);
    z += w;
    num += w * Q(p);
  }
  return num / z;
}

// Joint cumulant by the recursion kappa(S) = m(S) - sum_{P ∋ min S, P ⊊ S} kappa(P) m(S \ P).
inline CQ cumulant(const lylab::SpinModel& m, const std::vector<int>& sites) {
  const int n = static_cast<int>(sites.size());
  const std::uint32_t full = (1u << n) - 1;
  std::vector<CQ> mom(full + 1), kap(full + 1);
  for (std::uint32_t S = 1; S <= full; ++S) {
    std::vector<int> sub;
    for (int a = 0; a < n; ++a)
      if (S >> a & 1) sub.push_back(sites[a]);
    mom[S] = moment(m, sub);
  }
  for (std::uint32_t S = 1; S <= full; ++S) {
    std::uint32_t low = S & (~S + 1);
    CQ v = mom[S];
    for (std::uint32_t P = (S - 1) & S; P > 0; P = (P - 1) & S)
      if (P & low) v -= kap[P] * mom[S ^ P];
    kap[S] = v;
  }
  return kap[full];
}

inline lylab::Complex to_c(const CQ& z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

}  // namespace oracle
