#pragma once

// Independent double-precision reference computations used by the tests.
// None of these call into the library under test.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "vmp/linear_inequalities.hpp"
#include "vmp/scenarios.hpp"

namespace oracle {

struct Row {
  std::vector<double> g;
  double c = 0.0;
};

std::vector<Row> rows_of(const vmp::LinearInequalitySystem& sys);
bool row_ok(const Row& r, const std::vector<double>& x, double tol);
bool all_ok(const std::vector<Row>& rows, const std::vector<double>& x, double tol);

// Feasibility by enumerating basic solutions of the system clipped to
// [-box, box]^n. Exact enough for small integer data.
bool vertex_feasible(const std::vector<Row>& rows, std::size_t n, double box = 1e3, double tol = 1e-9);

// Dykstra's alternating projections from the origin onto the halfspaces.
std::vector<double> dykstra_min_norm(const std::vector<Row>& rows, std::size_t n, int sweeps = 200000);

// Exhaustive grid search for the smallest norm feasible point.
double grid_min_norm(const std::vector<Row>& rows, const std::vector<double>& lo,
                     const std::vector<double>& hi, double step, double tol);

// Chain length sum, accumulated by Horner's rule: S_N = S_{N-1} g_N + t_N.
int chain_length_horner(double a, double b, double d, int n_max);
// Same for constant maps via the geometric series t (g^{N-1} - 1) / (g - 1).
int chain_length_geometric(double a, double b, double d, int n_max);

// Closed-form basic condition values, written out directly.
struct BasicBounds {
  double vf_lower;
  double omega_l_upper;
  double omega_f_lower;
};
BasicBounds basic_bounds(double a, double b, double d, double V_L);

// Admissibility of the sparse gain for a box S = [-a,a]^2 x [-b,b]:
// |k11| a <= V_F and |k22| a + |k23| b <= Omega_F.
bool admissible_closed_form(double k11, double k22, double k23, double a, double b, double V_F, double Omega_F,
                            double tol = 0.0);

// Random basic scenario satisfying the type invariants (not necessarily feasible).
vmp::BasicScenario random_basic(std::mt19937_64& rng);
// Random basic scenario that passes the closed-form conditions with margin >= margin.
vmp::BasicScenario random_feasible_basic(std::mt19937_64& rng, double margin);

}  // namespace oracle
