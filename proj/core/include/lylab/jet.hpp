#pragma once

#include <vector>

#include "lylab/numeric.hpp"

namespace lylab {

// Truncated power series in eps_1..eps_n with eps_a^2 = 0: one coefficient per
// subset S (bitmask), the coefficient of prod_{a in S} eps_a.
class MultilinearJet {
 public:
  explicit MultilinearJet(int n) : n_(n), c_(std::size_t{1} << n, ComplexLD(0)) {}
  MultilinearJet(int n, std::vector<ComplexLD> coeffs);

  int vars() const { return n_; }
  ComplexLD& operator[](std::size_t S) { return c_[S]; }
  const ComplexLD& operator[](std::size_t S) const { return c_[S]; }
  const std::vector<ComplexLD>& coeffs() const { return c_; }

  MultilinearJet operator*(const MultilinearJet& o) const;  // subset convolution
  MultilinearJet operator+(const MultilinearJet& o) const;
  MultilinearJet scaled(ComplexLD s) const;

 private:
  int n_;
  std::vector<ComplexLD> c_;
};

// log of a jet with nonzero constant term (nilpotent series, terminates at order n).
MultilinearJet jet_log(const MultilinearJet& f);

// Inverse zeta transform on the subset lattice: out[S] = sum_{T in S} (-1)^{|S|-|T|} in[T].
std::vector<ComplexLD> subset_moebius(std::vector<ComplexLD> values, int n);

}  // namespace lylab
