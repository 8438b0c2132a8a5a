#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "vmp/linear_inequalities.hpp"
#include "vmp/rational.hpp"
#include "vmp/uncertain_systems.hpp"

namespace vmp {

struct BasicScenario {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;
  double V_F = 0.0;
  double V_L = 0.0;
  double Omega_F = 0.0;
  double Omega_L = 0.0;

  void validate() const;
};

struct UbbScenario {
  BasicScenario basic;
  double H_F = 0.0;
  double H_L = 0.0;

  // H_F = H_L = 0 is accepted so the disturbance-free limit can be compared.
  void validate() const;
};

struct CircleScenario {
  double a = 0.0;
  double b = 0.0;
  double gamma = 0.0;
  double rho = 0.0;
  double V_F = 0.0;
  double V_L = 0.0;
  double Omega_F = 0.0;
  double Omega_L = 0.0;

  void validate() const;
  // Equilibrium relative pose (p1, p2, beta) of the circular motion.
  std::array<double, 3> reference() const;
};

using VisibilityScenario = std::variant<BasicScenario, UbbScenario, CircleScenario>;

std::string scenario_type(const VisibilityScenario& sc);
void validate(const VisibilityScenario& sc);

struct RationalizedConstant {
  std::string name;
  double value = 0.0;
  Rational approx;
};

// Converts floating constants to rationals at a fixed precision and keeps
// an audit log of every conversion.
class Rationalizer {
 public:
  explicit Rationalizer(mpz_class max_den = default_max_denominator()) : max_den_(std::move(max_den)) {}

  Rational operator()(const std::string& name, double value);
  const std::vector<RationalizedConstant>& log() const { return log_; }
  const mpz_class& max_denominator() const { return max_den_; }

 private:
  mpz_class max_den_;
  std::vector<RationalizedConstant> log_;
};

struct Condition {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs; the condition reads lhs <= rhs
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Condition> conditions;

  void add(std::string id, double lhs, double rhs);
  const Condition* first_failure() const;
  double min_abs_slack() const;
  std::string to_text() const;
};

// Exact systems built from rationalized scenario constants.
ExactUncertainSystem build_basic_system_exact(const BasicScenario& sc, Rationalizer& rz);
ExactUncertainSystem build_ubb_system_exact(const UbbScenario& sc, Rationalizer& rz);
ExactUncertainSystem build_circle_system_exact(const CircleScenario& sc, Rationalizer& rz);

UncertainLinearSystem build_basic_system(const BasicScenario& sc);
UncertainLinearSystem build_ubb_system(const UbbScenario& sc);
UncertainLinearSystem build_circle_system(const CircleScenario& sc);
UncertainLinearSystem build_system(const VisibilityScenario& sc);
ExactUncertainSystem build_system_exact(const VisibilityScenario& sc, Rationalizer& rz);

FeasibilityReport feasible_basic(const BasicScenario& sc);
FeasibilityReport feasible_ubb(const UbbScenario& sc);
FeasibilityReport feasible_circle(const CircleScenario& sc);
FeasibilityReport feasibility(const VisibilityScenario& sc);

// Variables are (k11, k22, k23).
LinearInequalitySystem gain_polytope(const BasicScenario& sc, Rationalizer* rz = nullptr);
LinearInequalitySystem gain_polytope_ubb(const UbbScenario& sc, Rationalizer* rz = nullptr);
LinearInequalitySystem gain_polytope_circle(const CircleScenario& sc, Rationalizer* rz = nullptr);
LinearInequalitySystem gain_polytope_for(const VisibilityScenario& sc, Rationalizer* rz = nullptr);

// Shifted-cone conditions on vert(S) x vert(Q) x vert(D) plus admissibility,
// written as linear rows in (k11, k22, k23).
LinearInequalitySystem gain_polytope_from_system(const ExactUncertainSystem& sys, const Rational& tau);

bool derive_conditions_fme(const BasicScenario& sc);

}  // namespace vmp
