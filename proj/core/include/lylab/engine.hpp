#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lylab/model.hpp"

namespace lylab {

struct EngineOptions {
  int order = 0;                      // density nodes; 0 = the measure's order
  int sphere_order = 0;               // nodes per angle; 0 = default for N
  double field_bound = -1;            // sup |Re h| certified by the quartic window; < 0 = from the model
  std::size_t budget = std::size_t{1} << 24;  // max intermediate table entries
};

// Per-site nodes: spin vectors (ncomp each) with weights.
struct SiteRule {
  int ncomp = 1;
  std::vector<double> weight;
  std::vector<double> spin;
  int size() const { return static_cast<int>(weight.size()); }
};

SiteRule site_rule(const SpinModel& model, const EngineOptions& options = {});

// Spin component inserted into the integrand: sigma^{axis}_{site}.
struct SpinInsertion {
  int site = 0;
  int axis = 0;
};

// Sums exp(-beta H) over the product of site rules by eliminating sites in
// order; the result equals the full tensor-product sum. Pair factors are
// precomputed, so the same engine serves many field values.
class PartitionEngine {
 public:
  explicit PartitionEngine(const SpinModel& model, EngineOptions options = {});

  // fields: site-major, |Lambda| * N entries (effective_field_vectors layout).
  Complex evaluate(std::span<const Complex> fields, std::span<const SpinInsertion> insert = {}) const;
  ComplexLD evaluate_ext(std::span<const Complex> fields, std::span<const SpinInsertion> insert = {}) const;
  // Fields given in long double, for callers that add small shifts to h.
  ComplexLD evaluate_ext(std::span<const ComplexLD> fields, std::span<const SpinInsertion> insert = {}) const;
  Complex evaluate(Precision p, std::span<const Complex> fields, std::span<const SpinInsertion> insert = {}) const;

  const std::vector<Complex>& model_fields() const { return fields_; }
  std::size_t peak_table() const { return peak_; }
  const SiteRule& rule() const { return rule_; }
  int sites() const { return n_; }
  int components() const { return N_; }

 private:
  template <class T, class F>
  std::complex<T> run(std::span<const F> fields, std::span<const SpinInsertion> insert) const;

  struct PairIn {
    int partner;
    std::vector<double> factor;  // [k_partner * m + k_site]
  };
  struct QuarticIn {
    std::array<int, 3> partners;
    double coupling;  // beta * J
  };

  int n_ = 0, N_ = 1;
  double beta_ = 1;
  SiteRule rule_;
  std::vector<Complex> fields_;
  std::vector<std::vector<PairIn>> pair_in_;
  std::vector<std::vector<QuarticIn>> quartic_in_;
  std::vector<int> last_;
  std::size_t peak_ = 1;
};

}  // namespace lylab
