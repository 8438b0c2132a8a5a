#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vmp/linear_inequalities.hpp"
#include "vmp/uncertain_systems.hpp"

namespace vmp {

// Nearest point to the origin of a polyhedron, computed exactly.
struct NearestPoint {
  std::vector<Rational> point;
  Rational norm_squared;
  std::vector<std::size_t> active_rows;
  double kkt_residual = 0.0;
};

struct SynthesisResult {
  GainMatrix gain;
  std::vector<Rational> exact;  // (k11, k22, k23)
  double norm = 0.0;
  std::vector<std::size_t> active_rows;
  double kkt_residual = 0.0;
};

// Active-set enumeration over all row subsets of size <= num_vars.
// Throws InfeasibleError when the system is empty.
NearestPoint min_norm_point(const LinearInequalitySystem& poly);

// Same, for a system over (k11, k22, k23).
SynthesisResult min_norm_gain(const LinearInequalitySystem& poly);

bool is_strictly_interior(const LinearInequalitySystem& poly, const GainMatrix& gain, double eps = 1e-6);

}  // namespace vmp
