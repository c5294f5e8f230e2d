#pragma once

#include <vector>

#include "lylab/numeric.hpp"

namespace lylab {

struct ActivityRoot {
  ComplexLD z;
  double modulus = 0;
  double modulus_deviation = 0;  // ||z| - 1|, computed at working precision
  double residual = 0;           // |p(z)| / sum |a_k| |z|^k
  double inclusion_radius = 0;   // Weierstrass disk radius
  int cluster = 0;
  bool converged = false;
};

// Roots whose inclusion disks overlap form one cluster.
struct RootCluster {
  ComplexLD centroid;
  int multiplicity = 1;
  double centroid_deviation = 0;  // ||centroid| - 1|
  double radius = 0;              // max distance of a member from the centroid
};

struct RootResult {
  std::vector<ActivityRoot> roots;
  std::vector<RootCluster> clusters;
  bool converged = false;
  int iterations = 0;
  Precision precision = Precision::Extended;

  // max over clusters of the centroid deviation from the unit circle
  double max_circle_deviation() const;
};

// Roots of sum_k a_k z^k: companion eigenvalues refined by Aberth-Ehrlich.
RootResult roots_activity(const std::vector<Quad>& coeffs, Precision precision = Precision::Extended);
RootResult roots_activity(const std::vector<double>& coeffs, Precision precision = Precision::Extended);

}  // namespace lylab
