#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "vmp/gain_synthesis.hpp"
#include "vmp/scenarios.hpp"

using namespace vmp;

namespace {

const Condition& cond(const FeasibilityReport& rep, const std::string& id) {
  for (const auto& c : rep.conditions)
    if (c.id == id) return c;
  FAIL("missing condition " << id);
  return rep.conditions.front();
}

bool in_poly(const LinearInequalitySystem& p, const GainMatrix& K, double tol) {
  auto v = K.vec();
  return satisfies(p, std::span<const double>(v.data(), 3), tol);
}

// Polytope membership against the two certificates, on random gains.
void check_polytope_matches_certificates(const VisibilityScenario& sc, std::uint64_t seed) {
  Rationalizer rz;
  ExactUncertainSystem sys = build_system_exact(sc, rz);
  LinearInequalitySystem poly = gain_polytope_for(sc);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  // An interior point: the min-norm point of the polytope with every row
  // pulled inward by eps times the row norm.
  const LinearInequalitySystem red = reduce(poly);
  GainMatrix c{};
  for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
    LinearInequalitySystem inner(3);
    for (const auto& r : red.rows()) {
      double nn = 0;
      for (const auto& x : r.coeffs) nn += x.get_d() * x.get_d();
      inner.add_row(r.coeffs, r.rhs - rationalize(eps * std::sqrt(nn)));
    }
    if (is_feasible(inner)) {
      c = min_norm_gain(inner).gain;
      break;
    }
  }
  REQUIRE(in_poly(red, c, 0.0));
  int inside = 0;
  for (int i = 0; i < 120; ++i) {
    const double r = 0.05 * U(rng);
    GainMatrix K{c.k11 + r * (U(rng) - 0.5), c.k22 + r * (U(rng) - 0.5), c.k23 + r * (U(rng) - 0.5)};
    const mpz_class den(100000);
    auto Kq = gain_from_entries(rationalize(K.k11, den), rationalize(K.k22, den), rationalize(K.k23, den));
    std::vector<Rational> kv{Kq(0, 0), Kq(1, 1), Kq(1, 2)};
    const bool member = satisfies(poly, std::span<const Rational>(kv));
    const bool certified = check_admissible<Rational>(Kq, sys.S, sys.U, 0.0).holds &&
                           check_D_invariant_cone<Rational>(sys, Kq, Rational(1), 0.0).holds;
    CHECK(member == certified);
    inside += member;
  }
  CHECK(inside > 0);
  CHECK(inside < 120);
}

}  // namespace

TEST_CASE("basic system construction") {
  const BasicScenario sc = fixtures::basic();
  UncertainLinearSystem sys = build_basic_system(sc);
  CHECK(sys.n() == 3);
  CHECK(sys.m() == 2);
  CHECK(sys.l() == 2);
  CHECK(sys.p() == 6);
  CHECK(sys.Q.lo[0] == doctest::Approx(std::sin(sc.b) / sc.b - 1).epsilon(1e-10));
  CHECK(sys.Q.lo[0] == doctest::Approx(-0.09968).epsilon(1e-4));
  CHECK(sys.Q.hi[0] == 0.0);
  CHECK(sys.S.hi[0] == doctest::Approx(sc.a));
  CHECK(sys.S.hi[2] == doctest::Approx(sc.b));
  CHECK(sys.U.hi[0] == doctest::Approx(sc.V_F));
  CHECK(sys.D.hi[1] == doctest::Approx(sc.Omega_L));
  CHECK(sys.B.base(1, 1) == -2.0);
}

TEST_CASE("scenario validation") {
  BasicScenario bad = fixtures::basic();
  bad.d = 0.3;
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = fixtures::basic();
  bad.V_F = 1.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad = fixtures::basic();
  bad.b = 2.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
  CircleScenario c = fixtures::circle();
  CHECK(1 - std::cos(c.gamma) == doctest::Approx(0.1340).epsilon(1e-3));
  CHECK(c.rho * c.a == doctest::Approx(0.12));
  CHECK_NOTHROW(c.validate());
  c.rho = 0.5;  // rho a = 0.2 > 1 - cos(gamma)
  CHECK_THROWS_AS(c.validate(), InputError);
  c = fixtures::circle();
  c.Omega_L = 0.4;  // above rho
  CHECK_THROWS_AS(c.validate(), InputError);
  UbbScenario u = fixtures::ubb();
  u.H_F = -0.1;
  CHECK_THROWS_AS(u.validate(), InputError);
}

TEST_CASE("feasible_basic margins") {
  const BasicScenario sc = fixtures::basic();
  FeasibilityReport rep = feasible_basic(sc);
  CHECK(rep.feasible);
  const auto ob = oracle::basic_bounds(sc.a, sc.b, sc.d, sc.V_L);
  CHECK(cond(rep, "V_F lower bound").lhs == doctest::Approx(ob.vf_lower).epsilon(1e-12));
  CHECK(cond(rep, "Omega_L upper bound").rhs == doctest::Approx(ob.omega_l_upper).epsilon(1e-12));
  CHECK(cond(rep, "Omega_F lower bound").lhs == doctest::Approx(ob.omega_f_lower).epsilon(1e-12));
  CHECK(ob.vf_lower == doctest::Approx(0.6069).epsilon(1e-4));
  CHECK(ob.omega_l_upper == doctest::Approx(0.2652).epsilon(1e-4));
  CHECK(ob.omega_f_lower == doctest::Approx(0.5351).epsilon(1e-4));

  BasicScenario slow = sc;
  slow.V_F = 0.05;
  slow.V_L = 0.5;
  FeasibilityReport r2 = feasible_basic(slow);
  CHECK_FALSE(r2.feasible);
  REQUIRE(r2.first_failure() != nullptr);
  CHECK(r2.first_failure()->id == "V_F lower bound");

  BasicScenario turn = sc;
  turn.Omega_L = 0.27;
  FeasibilityReport r3 = feasible_basic(turn);
  CHECK_FALSE(r3.feasible);
  CHECK(r3.first_failure()->id == "Omega_L upper bound");
  CHECK(rep.to_text().find("V_F lower bound") != std::string::npos);
}

TEST_CASE("feasible_ubb") {
  CHECK(feasible_ubb(fixtures::ubb()).feasible);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    BasicScenario b = oracle::random_basic(rng);
    FeasibilityReport rb = feasible_basic(b);
    FeasibilityReport ru = feasible_ubb(UbbScenario{b, 0.0, 0.0});
    REQUIRE(rb.conditions.size() == ru.conditions.size());
    for (std::size_t k = 0; k < rb.conditions.size(); ++k) {
      CHECK(rb.conditions[k].lhs == ru.conditions[k].lhs);
      CHECK(rb.conditions[k].rhs == ru.conditions[k].rhs);
    }
  }
  UbbScenario zero = fixtures::ubb();
  const BasicScenario& b = zero.basic;
  zero.H_F = zero.H_L = (1 - b.V_L) * std::sin(b.b) / 2;
  FeasibilityReport rz = feasible_ubb(zero);
  CHECK_FALSE(rz.feasible);
  CHECK(cond(rz, "Omega_L upper bound").rhs == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("feasible_circle") { CHECK(feasible_circle(fixtures::circle()).feasible); }

TEST_CASE("property: feasible_basic is monotone in speeds, turn rates and a") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int flips = 0, tried = 0;
  for (int i = 0; i < 300; ++i) {
    BasicScenario s = oracle::random_feasible_basic(rng, 1e-4);
    if (!feasible_basic(s).feasible) continue;
    BasicScenario t = s;
    switch (i % 5) {
      case 0: t.V_F = s.V_F + (0.999 - s.V_F) * U(rng); break;
      case 1: t.Omega_F *= 1 + U(rng); break;
      case 2: t.V_L *= U(rng); break;
      case 3: t.Omega_L *= U(rng); break;
      default: t.a = 0.01 + (s.a - 0.01) * U(rng); break;
    }
    ++tried;
    flips += !feasible_basic(t).feasible;
  }
  CHECK(tried > 200);
  CHECK(flips == 0);
}

TEST_CASE("property: shrinking b relaxes the V_F and Omega_F conditions but tightens Omega_L") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int omega_l_flips = 0;
  for (int i = 0; i < 300; ++i) {
    BasicScenario s = oracle::random_feasible_basic(rng, 1e-4);
    BasicScenario t = s;
    t.b = 0.01 + (s.b - 0.01) * U(rng);
    FeasibilityReport rs = feasible_basic(s), rt = feasible_basic(t);
    CHECK(cond(rt, "V_F lower bound").slack >= cond(rs, "V_F lower bound").slack);
    CHECK(cond(rt, "Omega_F lower bound").slack >= cond(rs, "Omega_F lower bound").slack);
    CHECK(cond(rt, "Omega_L upper bound").rhs <= cond(rs, "Omega_L upper bound").rhs);
    omega_l_flips += rs.feasible && !rt.feasible;
  }
  // The (1 - V_L) sin b / (d + a) cap falls with b, so feasibility is not monotone in b.
  CHECK(omega_l_flips > 0);
}

TEST_CASE("gain polytope of the basic scenario") {
  const BasicScenario sc = fixtures::basic();
  LinearInequalitySystem p = gain_polytope(sc);
  CHECK(p.num_vars() == 3);
  CHECK(is_feasible(p));
  CHECK(in_poly(p, fixtures::basic_gain(), 1e-3));
  // The smallest admissible k11 sits at the printed value.
  std::vector<std::size_t> keep{0};
  LinearInequalitySystem k11 = reduce(project(p, keep));
  double lower = -1e9;
  for (const auto& r : k11.rows())
    if (r.coeffs[0] < 0) lower = std::max(lower, Rational(r.rhs / r.coeffs[0]).get_d());
  CHECK(lower == doctest::Approx(1.5173).epsilon(1e-3 / 1.5173));
  // Admissibility rows are present verbatim.
  Inequality k11_cap{{Rational(1), Rational(0), Rational(0)}, rationalize(sc.V_F / sc.a)};
  CHECK(implies(p, k11_cap));
}

TEST_CASE("gain polytope is empty when the leader is too fast") {
  BasicScenario sc = fixtures::basic();
  sc.V_L = 0.99;
  CHECK_FALSE(feasible_basic(sc).feasible);
  CHECK_FALSE(is_feasible(gain_polytope(sc)));
}

TEST_CASE("UBB polytope") {
  CHECK(in_poly(gain_polytope_ubb(fixtures::ubb()), fixtures::ubb_gain(), 5e-3));
  const BasicScenario b = fixtures::basic();
  auto pb = reduce(gain_polytope(b));
  auto pu = reduce(gain_polytope_ubb(UbbScenario{b, 0.0, 0.0}));
  CHECK(equivalent(pb, pu));
  CHECK(min_norm_gain(pb).exact == min_norm_gain(pu).exact);
}

TEST_CASE("polytope membership equals cone and admissibility") {
  check_polytope_matches_certificates(fixtures::basic(), 51);
  check_polytope_matches_certificates(fixtures::ubb(), 52);
  check_polytope_matches_certificates(fixtures::circle(), 53);
}

TEST_CASE("polytope from the generic pipeline matches the family construction") {
  Rationalizer rz;
  ExactUncertainSystem sys = build_basic_system_exact(fixtures::basic(), rz);
  CHECK(equivalent(gain_polytope_from_system(sys, Rational(1)), gain_polytope(fixtures::basic())));
}

TEST_CASE("derive_conditions_fme") {
  CHECK(derive_conditions_fme(fixtures::basic()));
  BasicScenario slow = fixtures::basic();
  slow.V_F = 0.05;
  slow.V_L = 0.5;
  CHECK_FALSE(derive_conditions_fme(slow));
  std::mt19937_64 rng(43);
  int n = 0;
  while (n < 60) {
    BasicScenario s = n % 2 ? oracle::random_basic(rng) : oracle::random_feasible_basic(rng, 2e-3);
    FeasibilityReport rep = feasible_basic(s);
    bool clear = true;
    for (const auto& c : rep.conditions) clear &= std::abs(c.slack) > 1e-3;
    if (!clear) continue;
    ++n;
    CHECK(derive_conditions_fme(s) == rep.feasible);
  }
}

TEST_CASE("rationalizer log") {
  Rationalizer rz;
  build_basic_system_exact(fixtures::basic(), rz);
  REQUIRE_FALSE(rz.log().empty());
  for (const auto& e : rz.log()) {
    CHECK(std::abs(e.approx.get_d() - e.value) <= 1e-12 * std::max(1.0, std::abs(e.value)));
    CHECK(e.approx.get_den() <= default_max_denominator());
  }
}
