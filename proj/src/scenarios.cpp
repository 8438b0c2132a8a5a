#include "vmp/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

namespace vmp {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

void check_speed_and_rates(double V_F, double V_L, double Omega_F, double Omega_L) {
  require(V_F > 0 && V_F < 1, "V_F must lie in (0, 1)");
  require(V_L > 0 && V_L < 1, "V_L must lie in (0, 1)");
  require(Omega_F > 0, "Omega_F must be positive");
  require(Omega_L > 0, "Omega_L must be positive");
}

// Interval with endpoints in either order.
std::pair<Rational, Rational> ordered(Rational x, Rational y) {
  if (y < x) std::swap(x, y);
  return {x, y};
}

Matrix<Rational> unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j, const Rational& v) {
  Matrix<Rational> m(rows, cols);
  m(i, j) = v;
  return m;
}

struct TrigConstants {
  Rational a, b, sin_b, cos_b;
};

TrigConstants basic_constants(const BasicScenario& sc, Rationalizer& rz) {
  return {rz("a", sc.a), rz("b", sc.b), rz("sin(b)", std::sin(sc.b)), rz("cos(b)", std::cos(sc.b))};
}

// A, B, Q and S shared by the basic and UBB systems.
ExactUncertainSystem basic_skeleton(const BasicScenario& sc, Rationalizer& rz) {
  const TrigConstants c = basic_constants(sc, rz);
  const Rational d = rz("d", sc.d);
  const Rational V_F = rz("V_F", sc.V_F);
  const Rational Omega_F = rz("Omega_F", sc.Omega_F);

  ExactUncertainSystem sys;
  sys.A.base = Matrix<Rational>(3, 3);
  sys.A.base(1, 2) = 1;
  sys.A.terms = {unit(3, 3, 1, 2, 1), unit(3, 3, 0, 2, 1), Matrix<Rational>(3, 3), Matrix<Rational>(3, 3),
                 Matrix<Rational>(3, 3), Matrix<Rational>(3, 3)};
  sys.B.base = Matrix<Rational>::from_rows({{-1, 0}, {0, 0}, {0, -1}});
  sys.B.base(1, 1) = -d;
  sys.B.terms = {Matrix<Rational>(3, 2), Matrix<Rational>(3, 2), unit(3, 2, 1, 1, -1), unit(3, 2, 0, 1, 1),
                 Matrix<Rational>(3, 2), Matrix<Rational>(3, 2)};

  const Rational q2 = (1 - c.cos_b) / c.b;
  sys.Q = Box<Rational>({c.sin_b / c.b - 1, -q2, -c.a, -c.a, c.cos_b - 1, -c.sin_b},
                        {Rational(0), q2, c.a, c.a, Rational(0), c.sin_b});
  sys.S = Box<Rational>::symmetric({c.a, c.a, c.b});
  sys.U = Box<Rational>::symmetric({V_F, Omega_F});
  return sys;
}

}  // namespace

void BasicScenario::validate() const {
  require(std::isfinite(a) && std::isfinite(b) && std::isfinite(d), "scenario values must be finite");
  require(a > 0, "a must be positive");
  require(d > a, "d must exceed a");
  require(b > 0 && b <= kHalfPi, "b must lie in (0, pi/2]");
  check_speed_and_rates(V_F, V_L, Omega_F, Omega_L);
}

void UbbScenario::validate() const {
  basic.validate();
  require(H_F >= 0 && H_L >= 0, "H_F and H_L must be nonnegative");
}

void CircleScenario::validate() const {
  require(a > 0, "a must be positive");
  require(b > 0, "b must be positive");
  require(gamma > 0 && gamma < kHalfPi, "gamma must lie in (0, pi/2)");
  require(rho > 0, "rho must be positive");
  require(1 - std::cos(gamma) > rho * a, "circle scenario needs 1 - cos(gamma) > rho * a");
  require(b - gamma >= 0 && b + gamma <= kHalfPi, "circle scenario needs 0 <= b - gamma and b + gamma <= pi/2");
  check_speed_and_rates(V_F, V_L, Omega_F, Omega_L);
  require(Omega_L < rho, "circle scenario needs Omega_L < rho");
}

std::array<double, 3> CircleScenario::reference() const {
  return {std::sin(gamma) / rho, (1 - std::cos(gamma)) / rho, gamma};
}

std::string scenario_type(const VisibilityScenario& sc) {
  switch (sc.index()) {
    case 0:
      return "basic";
    case 1:
      return "ubb";
    default:
      return "circle";
  }
}

void validate(const VisibilityScenario& sc) {
  std::visit([](const auto& s) { s.validate(); }, sc);
}

Rational Rationalizer::operator()(const std::string& name, double value) {
  Rational r = rationalize(value, max_den_);
  log_.push_back({name, value, r});
  return r;
}

void FeasibilityReport::add(std::string id, double lhs, double rhs) {
  Condition c{std::move(id), lhs, rhs, rhs - lhs};
  if (c.slack < 0) feasible = false;
  conditions.push_back(std::move(c));
}

const Condition* FeasibilityReport::first_failure() const {
  for (const auto& c : conditions)
    if (c.slack < 0) return &c;
  return nullptr;
}

double FeasibilityReport::min_abs_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : conditions) m = std::min(m, std::abs(c.slack));
  return m;
}

std::string FeasibilityReport::to_text() const {
  std::ostringstream os;
  os.precision(8);
  os << (feasible ? "feasible" : "infeasible") << '\n';
  for (const auto& c : conditions) {
    os << "  " << c.id << ": " << c.lhs << " <= " << c.rhs << "  slack " << c.slack
       << (c.slack < 0 ? "  FAILS" : "") << '\n';
  }
  return os.str();
}

ExactUncertainSystem build_basic_system_exact(const BasicScenario& sc, Rationalizer& rz) {
  sc.validate();
  ExactUncertainSystem sys = basic_skeleton(sc, rz);
  sys.E.base = Matrix<Rational>::from_rows({{1, 0}, {0, 0}, {0, 1}});
  sys.E.terms = {Matrix<Rational>(3, 2), Matrix<Rational>(3, 2), Matrix<Rational>(3, 2),
                 Matrix<Rational>(3, 2), unit(3, 2, 0, 0, 1),    unit(3, 2, 1, 0, 1)};
  sys.D = Box<Rational>::symmetric({rz("V_L", sc.V_L), rz("Omega_L", sc.Omega_L)});
  sys.validate();
  return sys;
}

ExactUncertainSystem build_ubb_system_exact(const UbbScenario& sc, Rationalizer& rz) {
  sc.validate();
  ExactUncertainSystem sys = basic_skeleton(sc.basic, rz);
  // Disturbance order (v_L, omega_L, h_F, h_L).
  sys.E.base = Matrix<Rational>::from_rows({{1, 0, 0, 0}, {0, 0, -1, 1}, {0, 1, 0, 0}});
  Matrix<Rational> e5(3, 4);
  e5(0, 0) = 1;
  e5(1, 3) = 1;
  Matrix<Rational> e6(3, 4);
  e6(1, 0) = 1;
  e6(0, 3) = -1;
  sys.E.terms = {Matrix<Rational>(3, 4), Matrix<Rational>(3, 4), Matrix<Rational>(3, 4), Matrix<Rational>(3, 4),
                 e5, e6};
  sys.D = Box<Rational>::symmetric({rz("V_L", sc.basic.V_L), rz("Omega_L", sc.basic.Omega_L), rz("H_F", sc.H_F),
                                    rz("H_L", sc.H_L)});
  sys.validate();
  return sys;
}

ExactUncertainSystem build_circle_system_exact(const CircleScenario& sc, Rationalizer& rz) {
  sc.validate();
  const Rational a = rz("a", sc.a);
  const Rational b = rz("b", sc.b);
  const Rational rho = rz("rho", sc.rho);
  const Rational sg = rz("sin(gamma)", std::sin(sc.gamma));
  const Rational cg = rz("cos(gamma)", std::cos(sc.gamma));
  const Rational sp = rz("sin(b+gamma)", std::sin(sc.b + sc.gamma));
  const Rational cp = rz("cos(b+gamma)", std::cos(sc.b + sc.gamma));
  const Rational sm = rz("sin(b-gamma)", std::sin(sc.b - sc.gamma));
  const Rational cm = rz("cos(b-gamma)", std::cos(sc.b - sc.gamma));

  ExactUncertainSystem sys;
  sys.A.base = Matrix<Rational>(3, 3);
  sys.A.base(0, 1) = rho;
  sys.A.base(0, 2) = -sg;
  sys.A.base(1, 0) = -rho;
  sys.A.base(1, 2) = cg;
  sys.A.terms = {unit(3, 3, 1, 2, 1), unit(3, 3, 0, 2, 1), Matrix<Rational>(3, 3), Matrix<Rational>(3, 3),
                 Matrix<Rational>(3, 3), Matrix<Rational>(3, 3)};
  sys.B.base = Matrix<Rational>::from_rows({{-1, 0}, {0, 0}, {0, -1}});
  sys.B.base(0, 1) = (1 - cg) / rho;
  sys.B.base(1, 1) = -sg / rho;
  sys.B.terms = {Matrix<Rational>(3, 2), Matrix<Rational>(3, 2), unit(3, 2, 1, 1, -1), unit(3, 2, 0, 1, 1),
                 Matrix<Rational>(3, 2), Matrix<Rational>(3, 2)};
  sys.E.base = Matrix<Rational>::from_rows({{0, 0}, {0, 0}, {0, 1}});
  sys.E.base(0, 0) = cg;
  sys.E.base(1, 0) = sg;
  sys.E.terms = {Matrix<Rational>(3, 2), Matrix<Rational>(3, 2), Matrix<Rational>(3, 2),
                 Matrix<Rational>(3, 2), unit(3, 2, 0, 0, 1),    unit(3, 2, 1, 0, 1)};

  // Interval ends as printed; sorted because their order depends on b and gamma.
  auto q1 = ordered((sp - sg) / b - cg, (sm + sg) / b - cg);
  auto q2 = ordered((cp - cg) / b + sg, (cg - cm) / b + sg);
  auto q5 = ordered(cp - cg, cm - cg);
  auto q6 = ordered(-sm - sg, sp - sg);
  sys.Q = Box<Rational>({q1.first, q2.first, -a, -a, q5.first, q6.first},
                        {q1.second, q2.second, a, a, q5.second, q6.second});
  sys.S = Box<Rational>::symmetric({a, a, b});
  sys.U = Box<Rational>::symmetric({rz("V_F", sc.V_F), rz("Omega_F", sc.Omega_F)});
  sys.D = Box<Rational>::symmetric({rz("V_L", sc.V_L), rz("Omega_L", sc.Omega_L)});
  sys.validate();
  return sys;
}

UncertainLinearSystem build_basic_system(const BasicScenario& sc) {
  Rationalizer rz;
  return build_basic_system_exact(sc, rz).cast<double>();
}

UncertainLinearSystem build_ubb_system(const UbbScenario& sc) {
  Rationalizer rz;
  return build_ubb_system_exact(sc, rz).cast<double>();
}

UncertainLinearSystem build_circle_system(const CircleScenario& sc) {
  Rationalizer rz;
  return build_circle_system_exact(sc, rz).cast<double>();
}

ExactUncertainSystem build_system_exact(const VisibilityScenario& sc, Rationalizer& rz) {
  struct Visitor {
    Rationalizer& rz;
    ExactUncertainSystem operator()(const BasicScenario& s) const { return build_basic_system_exact(s, rz); }
    ExactUncertainSystem operator()(const UbbScenario& s) const { return build_ubb_system_exact(s, rz); }
    ExactUncertainSystem operator()(const CircleScenario& s) const { return build_circle_system_exact(s, rz); }
  };
  return std::visit(Visitor{rz}, sc);
}

UncertainLinearSystem build_system(const VisibilityScenario& sc) {
  Rationalizer rz;
  return build_system_exact(sc, rz).cast<double>();
}

FeasibilityReport feasible_basic(const BasicScenario& sc) {
  sc.validate();
  const double a = sc.a, b = sc.b, d = sc.d;
  FeasibilityReport rep;
  rep.add("V_F lower bound",
          sc.V_L * (1 + a * std::sin(b) / (d - a)) + 1 - std::cos(b) + a * b / (d - a), sc.V_F);
  rep.add("Omega_L upper bound", sc.Omega_L, (1 - sc.V_L) * std::sin(b) / (d + a));
  rep.add("Omega_F lower bound", (sc.V_L * std::sin(b) + b) / (d - a), sc.Omega_F);
  return rep;
}

FeasibilityReport feasible_ubb(const UbbScenario& sc) {
  sc.validate();
  const BasicScenario& s = sc.basic;
  const double a = s.a, b = s.b, d = s.d, H = sc.H_F + sc.H_L;
  FeasibilityReport rep;
  rep.add("V_F lower bound",
          s.V_L * (1 + a * std::sin(b) / (d - a)) + 1 - std::cos(b) + a * (H + b) / (d - a) +
              sc.H_L * std::sin(b),
          s.V_F);
  rep.add("Omega_L upper bound", s.Omega_L, ((1 - s.V_L) * std::sin(b) - H) / (d + a));
  rep.add("Omega_F lower bound", (s.V_L * std::sin(b) + b + H) / (d - a), s.Omega_F);
  return rep;
}

FeasibilityReport feasible_circle(const CircleScenario& sc) {
  sc.validate();
  const double a = sc.a, b = sc.b, g = sc.gamma, rho = sc.rho;
  const double ra = rho * a;
  const double ratio = (1 - std::cos(g) - ra) / (std::sin(g) + ra);
  FeasibilityReport rep;
  rep.add("V_F lower bound",
          sc.V_L * (std::cos(b - g) + std::sin(b + g) * ratio) + std::cos(g) + ra -
              ratio * (std::sin(b + g) - std::sin(g) + ra) - std::cos(b + g),
          sc.V_F);
  rep.add("Omega_L upper bound", sc.Omega_L, rho * ((1 - sc.V_L) * std::sin(b + g) / (std::sin(g) + ra) - 1));
  rep.add("Omega_F lower bound",
          rho * (sc.V_L * std::sin(b + g) + std::sin(b - g) + std::sin(g) + ra) / (std::sin(g) - ra), sc.Omega_F);
  return rep;
}

FeasibilityReport feasibility(const VisibilityScenario& sc) {
  struct Visitor {
    FeasibilityReport operator()(const BasicScenario& s) const { return feasible_basic(s); }
    FeasibilityReport operator()(const UbbScenario& s) const { return feasible_ubb(s); }
    FeasibilityReport operator()(const CircleScenario& s) const { return feasible_circle(s); }
  };
  return std::visit(Visitor{}, sc);
}

LinearInequalitySystem gain_polytope(const BasicScenario& sc, Rationalizer* rz_in) {
  sc.validate();
  if (!feasible_basic(sc).feasible) std::cerr << "warning: building the gain polytope of an infeasible scenario\n";
  Rationalizer local;
  Rationalizer& rz = rz_in ? *rz_in : local;
  const TrigConstants c = basic_constants(sc, rz);
  const Rational d = rz("d", sc.d);
  const Rational V_F = rz("V_F", sc.V_F);
  const Rational V_L = rz("V_L", sc.V_L);
  const Rational Omega_F = rz("Omega_F", sc.Omega_F);
  const Rational Omega_L = rz("Omega_L", sc.Omega_L);
  const Rational& a = c.a;
  const Rational& b = c.b;
  const Rational ba = b / a;
  const Rational ab = a / b;

  const Rational q2_hi = (1 - c.cos_b) / b;
  const Rational q2s[] = {q2_hi, -q2_hi};
  const Rational q4s[] = {a, -a};
  const Rational q1s[] = {Rational(0), c.sin_b / b - 1};
  const Rational q3s[] = {a, -a};

  LinearInequalitySystem sys(3);
  auto row = [&](Rational k11, Rational k22, Rational k23, Rational rhs) {
    sys.add_row({std::move(k11), std::move(k22), std::move(k23)}, std::move(rhs));
  };
  // Families over the (q2, q4) corners.
  for (const auto& q2 : q2s)
    for (const auto& q4 : q4s) row(-1, q4, ba * q4, -ba * q2 - V_L / a);
  // Families over the (q1, q3) corners.
  for (const auto& q1 : q1s)
    for (const auto& q3 : q3s) row(0, -(d + q3), -ba * (d + q3), -ba * (1 + q1) - V_L * c.sin_b / a);
  for (const auto& q2 : q2s)
    for (const auto& q4 : q4s) row(-1, q4, -ba * q4, ba * q2 - V_L / a);
  for (const auto& q1 : q1s)
    for (const auto& q3 : q3s) row(0, -(d + q3), ba * (d + q3), ba * (1 + q1) - V_L * c.sin_b / a);
  row(0, -ab, -1, -Omega_L / b);
  row(0, ab, -1, -Omega_L / b);
  for (const auto& q2 : q2s)
    for (const auto& q4 : q4s) row(-1, -q4, ba * q4, -ba * q2 - V_L / a);
  for (const auto& q2 : q2s)
    for (const auto& q4 : q4s) row(-1, -q4, -ba * q4, ba * q2 - V_L / a);

  // Admissibility.
  row(1, 0, 0, V_F / a);
  row(-1, 0, 0, V_F / a);
  row(0, 1, ba, Omega_F / a);
  row(0, -1, -ba, Omega_F / a);
  row(0, 1, -ba, Omega_F / a);
  row(0, -1, ba, Omega_F / a);
  return deduplicate(sys);
}

LinearInequalitySystem gain_polytope_from_system(const ExactUncertainSystem& sys, const Rational& tau) {
  if (sys.n() != 3 || sys.m() != 2) throw InputError("structured gain needs 3 states and 2 inputs");
  if (!(tau > 0)) throw InputError("tau must be positive");
  // K = k11 M0 + k22 M1 + k23 M2.
  const Matrix<Rational> M[3] = {gain_from_entries<Rational>(1, 0, 0), gain_from_entries<Rational>(0, 1, 0),
                                 gain_from_entries<Rational>(0, 0, 1)};
  const auto qv = sys.Q.vertices();
  const auto dv = sys.D.vertices();
  std::vector<Matrix<Rational>> A_at, B_at;
  for (const auto& w : qv) {
    A_at.push_back(sys.A.eval(w));
    B_at.push_back(sys.B.eval(w));
  }

  LinearInequalitySystem out(3);
  const auto sv = sys.S.vertices();
  for (const auto& v : sv) {
    HalfspaceCone<Rational> cone = vertex_cone(sys.S, std::span<const Rational>(v));
    std::vector<Rational> Mv[3];
    for (int i = 0; i < 3; ++i) Mv[i] = M[i] * v;
    for (const auto& cr : cone.rows) {
      const Rational push = worst_disturbance_push<Rational>(cr.g, sys.E, qv, dv);
      const Rational gv = dot<Rational>(cr.g, v);
      for (std::size_t j = 0; j < qv.size(); ++j) {
        // g (I + tau (A + B K)) v <= xi - tau * push, linear in the k's.
        std::vector<Rational> coeffs(3);
        for (int i = 0; i < 3; ++i) coeffs[i] = tau * dot<Rational>(cr.g, B_at[j] * Mv[i]);
        Rational rhs = cr.xi - tau * push - gv - tau * dot<Rational>(cr.g, A_at[j] * v);
        out.add_row(std::move(coeffs), std::move(rhs));
      }
    }
  }
  for (const auto& v : sv) {
    std::vector<Rational> Mv[3];
    for (int i = 0; i < 3; ++i) Mv[i] = M[i] * v;
    for (std::size_t u = 0; u < sys.m(); ++u) {
      std::vector<Rational> up(3), down(3);
      for (int i = 0; i < 3; ++i) {
        up[i] = Mv[i][u];
        down[i] = -Mv[i][u];
      }
      out.add_row(std::move(up), sys.U.hi[u]);
      out.add_row(std::move(down), -sys.U.lo[u]);
    }
  }
  return deduplicate(out);
}

LinearInequalitySystem gain_polytope_ubb(const UbbScenario& sc, Rationalizer* rz_in) {
  Rationalizer local;
  return gain_polytope_from_system(build_ubb_system_exact(sc, rz_in ? *rz_in : local), Rational(1));
}

LinearInequalitySystem gain_polytope_circle(const CircleScenario& sc, Rationalizer* rz_in) {
  Rationalizer local;
  return gain_polytope_from_system(build_circle_system_exact(sc, rz_in ? *rz_in : local), Rational(1));
}

LinearInequalitySystem gain_polytope_for(const VisibilityScenario& sc, Rationalizer* rz) {
  struct Visitor {
    Rationalizer* rz;
    LinearInequalitySystem operator()(const BasicScenario& s) const { return gain_polytope(s, rz); }
    LinearInequalitySystem operator()(const UbbScenario& s) const { return gain_polytope_ubb(s, rz); }
    LinearInequalitySystem operator()(const CircleScenario& s) const { return gain_polytope_circle(s, rz); }
  };
  return std::visit(Visitor{rz}, sc);
}

bool derive_conditions_fme(const BasicScenario& sc) {
  LinearInequalitySystem constants = project(gain_polytope(sc), std::span<const std::size_t>{});
  for (const auto& r : constants.rows())
    if (r.rhs < 0) return false;
  return true;
}

}  // namespace vmp
