#include "lylab/jet.hpp"

#include "lylab/error.hpp"

namespace lylab {

MultilinearJet::MultilinearJet(int n, std::vector<ComplexLD> coeffs) : n_(n), c_(std::move(coeffs)) {
  require(c_.size() == (std::size_t{1} << n), "jet needs 2^n coefficients");
}

MultilinearJet MultilinearJet::operator*(const MultilinearJet& o) const {
  require(n_ == o.n_, "jet size mismatch");
  MultilinearJet r(n_);
  for (std::size_t S = 0; S < c_.size(); ++S) {
    // all T subset of S, including S itself
    ComplexLD s = 0;
    for (std::size_t T = S;; T = (T - 1) & S) {
      s += c_[T] * o.c_[S ^ T];
      if (T == 0) break;
    }
    r.c_[S] = s;
  }
  return r;
}

MultilinearJet MultilinearJet::operator+(const MultilinearJet& o) const {
  require(n_ == o.n_, "jet size mismatch");
  MultilinearJet r(n_);
  for (std::size_t S = 0; S < c_.size(); ++S) r.c_[S] = c_[S] + o.c_[S];
  return r;
}

MultilinearJet MultilinearJet::scaled(ComplexLD s) const {
  MultilinearJet r(n_);
  for (std::size_t S = 0; S < c_.size(); ++S) r.c_[S] = s * c_[S];
  return r;
}

MultilinearJet jet_log(const MultilinearJet& f) {
  ComplexLD c0 = f[0];
  if (c0 == ComplexLD(0)) fail(ErrorCode::SingularAverage, "log of a jet with zero constant term");
  int n = f.vars();
  MultilinearJet x = f.scaled(1.0L / c0);
  x[0] = 0;  // f / c0 = 1 + x with x nilpotent
  MultilinearJet out(n), power = x;
  for (int k = 1; k <= n; ++k) {
    out = out + power.scaled((k % 2 == 1 ? 1.0L : -1.0L) / k);
    power = power * x;
  }
  out[0] = std::log(c0);
  return out;
}

std::vector<ComplexLD> subset_moebius(std::vector<ComplexLD> v, int n) {
  for (int b = 0; b < n; ++b)
    for (std::size_t S = 0; S < v.size(); ++S)
      if (S & (std::size_t{1} << b)) v[S] -= v[S ^ (std::size_t{1} << b)];
  return v;
}

}  // namespace lylab
