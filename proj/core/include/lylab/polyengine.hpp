#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lylab/engine.hpp"
#include "lylab/model.hpp"
#include "lylab/numeric.hpp"

namespace lylab {

inline constexpr int kMaxPolynomialSites = 24;

// Z = prefactor(h) * sum_X E_X prod_{x in X} z_x with z_x = (w_-/w_+) exp(-2 beta h_x)
// and prefactor prod_x w_+ exp(beta h_x); index X is a bitmask of flipped sites.
class ActivityPolynomial {
 public:
  ActivityPolynomial() = default;
  ActivityPolynomial(int nvars, std::vector<Quad> coeffs);

  int nvars() const { return nvars_; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Quad>& coeffs() const { return coeffs_; }
  const Quad& operator[](std::uint32_t mask) const { return coeffs_[mask]; }

  double beta = 0;
  std::uint64_t model_hash = 0;
  double weight_plus = 1;   // atom weight at +1
  double weight_minus = 1;  // atom weight at -1

  // a_k = sum_{|X| = k} E_X, k = 0..nvars
  std::vector<Quad> uniform_reduction() const;
  // sum_X E_X z^X by nested Horner folding.
  ComplexLD evaluate(std::span<const ComplexLD> z) const;
  ComplexLD evaluate_uniform(ComplexLD z) const;
  // Partition function at per-site fields h_x (axis 1).
  ComplexLD partition_value(std::span<const Complex> h) const;
  // max_X |E_X - E_{complement}| / max_X |E_X|
  double symmetry_defect() const;
  bool all_positive() const;

 private:
  int nvars_ = 0;
  std::vector<Quad> coeffs_;
};

ActivityPolynomial partition_polynomial(const SpinModel& model, int jobs = 1);
Complex evaluate_partition(const SpinModel& model, const EngineOptions& options = {},
                           Precision precision = Precision::Extended);

ActivityPolynomial schur_hadamard(const ActivityPolynomial& P, const ActivityPolynomial& Q);
// Variables of P first, then those of Q.
ActivityPolynomial tensor_product(const ActivityPolynomial& P, const ActivityPolynomial& Q);
// Writes P = A + B z_i + C z_j + D z_i z_j and returns A + D w. The new variable w
// takes index min(i, j); variables above max(i, j) move down by one.
ActivityPolynomial asano_contract(const ActivityPolynomial& P, int i, int j);

struct PairCoupling {
  int x = 0, y = 0;
  double J = 0;
};

struct QuarticDecomposition {
  ActivityPolynomial z2;                   // pair factor
  ActivityPolynomial z4;                   // four-spin factor
  std::vector<PairCoupling> pair_tilde;    // Jtilde on pairs (nonzero entries)
  std::vector<QuarticTerm> quartic_tilde;  // Jtilde = 8 J on 4-sets
  double jtilde0 = 0;                      // E_X = exp(beta jtilde0) E2_X E4_X
  double reconstruction_error = 0;         // max relative error against the direct polynomial
};

QuarticDecomposition quartic_decomposition(const SpinModel& model);

struct QuarticConditions {
  bool condition1 = true;  // 8 beta J_U >= ln 2 or J_U = 0 on every 4-set
  bool condition2 = true;  // J_xy >= sum of J_U over 4-sets containing {x, y}
  std::vector<std::string> failures;
  bool both() const { return condition1 && condition2; }
};

QuarticConditions check_quartic_ly_conditions(const SpinModel& model);

nlohmann::json polynomial_to_json(const ActivityPolynomial& P);
ActivityPolynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace lylab
