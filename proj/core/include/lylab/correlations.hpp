#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lylab/engine.hpp"
#include "lylab/model.hpp"

namespace lylab {

inline constexpr int kMaxUrsellOrder = 6;

struct UrsellSpec {
  std::vector<int> sites;
  std::vector<int> axes;  // empty = axis 0 for every entry
  int order() const { return static_cast<int>(sites.size()); }
  int axis(int i) const { return axes.empty() ? 0 : axes[i]; }
};

enum class UrsellRoute { Moebius, EpsilonDerivative };
std::string_view to_string(UrsellRoute r);

struct UrsellResult {
  Complex value;
  UrsellRoute route = UrsellRoute::Moebius;
  double error_estimate = 0;
  std::uint64_t model_hash = 0;
  std::string method;  // "set-partitions", "multiaffine-interpolation", "cauchy-trapezoid"
};

struct CorrelationOptions {
  EngineOptions engine;
  Precision precision = Precision::Extended;
  double singular_margin = 1e-12;  // refuse averages when |Z| < margin * |Z(Re h)|
  int cauchy_nodes = 0;            // nodes per variable for the trapezoid route; 0 = by order
};

// Thermal moments of one model. +-1 spin models up to 20 sites get a full table
// of <sigma_A> by a Walsh-Hadamard transform of the configuration weights; other
// measures use the contraction engine with spin insertions.
class MomentOracle {
 public:
  explicit MomentOracle(const SpinModel& model, CorrelationOptions options = {});

  Complex average(std::span<const SpinInsertion> insert);
  // Same in long double; the table and the engine both work at that precision.
  ComplexLD average_ext(std::span<const SpinInsertion> insert);
  bool tabulated() const { return !table_.empty(); }
  // <sigma_A> for a site bitmask; tabulated oracles only
  Complex table_moment(std::uint32_t mask) const {
    return {static_cast<double>(table_[mask].real()), static_cast<double>(table_[mask].imag())};
  }
  const SpinModel& model() const { return model_; }
  std::uint64_t hash() const { return hash_; }

 private:
  SpinModel model_;
  CorrelationOptions options_;
  std::uint64_t hash_;
  std::vector<ComplexLD> table_;
  std::unique_ptr<PartitionEngine> engine_;
  std::vector<Complex> fields_;
  ComplexLD z_ = 1;
  std::map<std::vector<std::pair<int, int>>, ComplexLD> cache_;
};

Complex thermal_average(const SpinModel& model, std::span<const SpinInsertion> insert,
                        const CorrelationOptions& options = {});

// Moment-to-cumulant inversion over set partitions.
UrsellResult ursell_moebius(MomentOracle& oracle, const UrsellSpec& spec);
UrsellResult ursell_moebius(const SpinModel& model, const UrsellSpec& spec, const CorrelationOptions& options = {});

// Mixed derivative of log Z(h, eps) with eps_a coupled to sigma_{x_a}, at eps = 0.
// +-1 spins: Z e^{-sum eps} is multi-affine in v_a = e^{-2 eps_a}, so 2^n samples
// determine it exactly. Other measures: trapezoid rule on a polycircle in eps.
UrsellResult ursell_epsilon_derivative(const SpinModel& model, const UrsellSpec& spec,
                                       const CorrelationOptions& options = {});

struct FourierResult {
  Complex value;
  bool constraint_ok = true;  // sum of modes in the zero class
  UrsellRoute route = UrsellRoute::Moebius;
  double error_estimate = 0;
};

// (1/|Lambda|) <sigma_k1; ...; sigma_kn>^c with sigma_k = sum_x e^{i k.x} sigma_x.
FourierResult fourier_connected(const SpinModel& model, const std::vector<std::vector<int>>& modes,
                                UrsellRoute route, const CorrelationOptions& options = {});

enum class InequalityKind { GHS, Griffiths, FKG };
std::string_view to_string(InequalityKind k);
InequalityKind parse_inequality(std::string_view text);

struct InequalityCheck {
  std::string label;
  double value = 0;
};

struct InequalityOptions {
  double tol = 1e-12;
  bool exploratory = false;
  int max_subset = 0;  // Griffiths subset size cap; 0 = 3 for +-1 spins, 2 otherwise
  CorrelationOptions correlation;
};

struct InequalityReport {
  InequalityKind kind = InequalityKind::GHS;
  bool preconditions_ok = true;
  bool exploratory = false;
  std::vector<std::string> notes;
  std::string family;
  std::size_t checks = 0;
  double worst = 0;  // most adverse signed value (max for GHS, min otherwise)
  std::vector<InequalityCheck> violations;
  bool passed() const { return preconditions_ok && violations.empty() && checks > 0; }
};

InequalityReport inequality_suite(const SpinModel& model, InequalityKind kind, const InequalityOptions& options = {});

struct MagnetizationRow {
  double h = 0;
  double m = 0;    // <sigma_x>
  double dm = 0;   // d/dh <sigma_x> = beta sum_z <sigma_x; sigma_z>
  double d2m = 0;  // beta^2 sum_{z,w} <sigma_x; sigma_z; sigma_w>
};

struct MagnetizationTable {
  std::vector<MagnetizationRow> rows;
  int site = 0;
  double concavity_tol = 1e-12;
  bool positive = true;
  bool increasing = true;
  bool concave = true;
};

MagnetizationTable magnetization_profile(const SpinModel& model, std::span<const double> h_grid, int site = 0,
                                         const CorrelationOptions& options = {}, double concavity_tol = 1e-12);

}  // namespace lylab
