// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "vmp/chain.hpp"
#include "vmp/gain_synthesis.hpp"
#include "vmp/scenarios.hpp"
#include "vmp/simulation.hpp"

using namespace vmp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

const std::string kConfigs = VMP_TEST_CONFIG_DIR;

int run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return cli::run_cli(args, out, err);
}

Outcome criterion1() {
  Outcome o;
  const std::vector<std::pair<std::string, std::vector<std::string>>> runs = {
      {"basic", {"check", "--scenario", kConfigs + "/basic.json"}},
      {"ubb", {"check", "--scenario", kConfigs + "/ubb.json"}},
      {"circle", {"check", "--scenario", kConfigs + "/circle.json"}},
      {"chain", {"chain", "--scenario", kConfigs + "/chain.json"}},
  };
  for (const auto& [name, args] : runs) {
    auto t0 = Clock::now();
    int rc = run(args);
    double dt = seconds_since(t0);
    if (rc != 0) o.fail(name + " exit " + std::to_string(rc));
    if (dt >= 1.0) o.fail(name + " took " + fmt("%.2f s", dt));
    o.note(name + " " + fmt("%.3f s", dt));
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto t0 = Clock::now();
  SynthesisResult r = min_norm_gain(reduce(gain_polytope(fixtures::basic())));
  double dt = seconds_since(t0);
  o.note("k11 = " + fmt("%.6f", r.gain.k11) + ", " + fmt("%.2f s", dt));
  if (std::abs(r.gain.k11 - 1.5173) > 1e-3) o.fail("k11 off by " + fmt("%.2e", std::abs(r.gain.k11 - 1.5173)));
  if (dt >= 10.0) o.fail("runtime");
  return o;
}

double worst_excess(const LinearInequalitySystem& poly, const GainMatrix& K) {
  auto v = K.vec();
  auto s = slacks(poly, std::span<const double>(v.data(), 3));
  double worst = 0;
  for (double x : s) worst = std::min(worst, x);
  return -worst;
}

Outcome criterion3() {
  Outcome o;
  struct Case {
    std::string name;
    LinearInequalitySystem poly;
    GainMatrix printed;
  };
  std::vector<Case> cases = {
      {"basic", gain_polytope(fixtures::basic()), fixtures::basic_gain()},
      {"ubb", gain_polytope_ubb(fixtures::ubb()), fixtures::ubb_gain()},
      {"circle", gain_polytope_circle(fixtures::circle()), fixtures::circle_gain()},
  };
  const ChainSpec chain = fixtures::chain();
  const auto gains = fixtures::chain_gains();
  for (std::size_t k = 0; k < gains.size(); ++k)
    cases.push_back({"chain K" + std::to_string(k + 2), gain_polytope(chain.pair(k)), gains[k]});
  for (const auto& c : cases) {
    const double excess = worst_excess(c.poly, c.printed);
    const auto v = c.printed.vec();
    const bool member = satisfies(c.poly, std::span<const double>(v.data(), 3), 5e-3);
    SynthesisResult r = min_norm_gain(reduce(c.poly));
    const bool dominated = r.norm <= c.printed.norm() + 1e-6;
    if (!member) o.fail(c.name + " printed gain outside polytope by " + fmt("%.4f", excess));
    if (!dominated) o.fail(c.name + " min-norm " + fmt("%.5f", r.norm) + " > printed " + fmt("%.5f", c.printed.norm()));
    if (member && dominated) o.note(c.name + " ok");
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto t0 = Clock::now();
  auto check = [&](const std::string& name, const SimTrace& tr, const VisibilityScenario& sc) {
    UncertainLinearSystem sys = build_system(sc);
    ViolationReport rep = monitor(tr, sys.S, sys.U);
    if (!rep.clean())
      o.fail(name + " " + std::to_string(rep.state_violations.size() + rep.input_violations.size()) + " violations");
    if (tr.clamp_events != 0) o.fail(name + " " + std::to_string(tr.clamp_events) + " clamps");
  };
  const std::array<double, 3> s0{0.3285, -0.1626, 0.1071};
  check("basic", simulate_basic(fixtures::basic(), fixtures::basic_gain(), fixtures::basic_profile(), s0, 60, 1e-3),
        fixtures::basic());
  check("ubb",
        simulate_ubb(fixtures::ubb(), fixtures::ubb_gain(), fixtures::ubb_profile(), uniform_noise(0.1, 0.1, 2024), s0,
                     60, 1e-3),
        fixtures::ubb());
  check("circle",
        simulate_circle(fixtures::circle(), fixtures::circle_gain(), fixtures::circle_profile(), {0, 0, 0.5597}, 60,
                        1e-3),
        fixtures::circle());
  const ChainSpec chain = fixtures::chain();
  auto traces = simulate_chain(chain, fixtures::chain_gains(), fixtures::chain_profile(), fixtures::chain_s0(), 60, 1e-3);
  for (std::size_t k = 0; k < traces.size(); ++k)
    check("chain link " + std::to_string(k + 1), traces[k], chain.pair(k));
  const double dt = seconds_since(t0);
  if (dt >= 30.0) o.fail("runtime " + fmt("%.1f s", dt));
  o.note("6 traces, " + fmt("%.2f s", dt));
  return o;
}

bool all_margins_exceed(const FeasibilityReport& rep, double m) {
  for (const auto& c : rep.conditions)
    if (std::abs(c.slack) <= m) return false;
  return true;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(5);
  auto t0 = Clock::now();
  int agree = 0, feasible = 0, total = 0;
  while (total < 100) {
    BasicScenario sc = total % 2 == 0 ? oracle::random_feasible_basic(rng, 2e-3) : oracle::random_basic(rng);
    FeasibilityReport rep = feasible_basic(sc);
    if (!all_margins_exceed(rep, 1e-3)) continue;
    ++total;
    feasible += rep.feasible;
    if (derive_conditions_fme(sc) == rep.feasible) ++agree;
  }
  const double dt = seconds_since(t0);
  o.note(std::to_string(agree) + "/100 agree (" + std::to_string(feasible) + " feasible), " + fmt("%.1f s", dt));
  if (agree != 100) o.fail("disagreement");
  if (dt >= 60) o.fail("runtime");
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int agree = 0, both_hold = 0, cone_only = 0, euler_only = 0, euler_at_limit = 0;
  for (int i = 0; i < 200; ++i) {
    BasicScenario b = i % 2 == 0 ? oracle::random_feasible_basic(rng, 1e-3) : oracle::random_basic(rng);
    VisibilityScenario sc = b;
    if (i % 4 == 1) sc = UbbScenario{b, 0.05 * U(rng), 0.05 * U(rng)};
    // Coarser rationalization keeps the exact sweep fast; verdicts are exact
    // for the rationalized data.
    const mpz_class den(1000000);
    Rationalizer rz(den);
    ExactUncertainSystem sys = build_system_exact(sc, rz);
    LinearInequalitySystem poly = reduce(gain_polytope_for(sc));
    const GainMatrix box_draw{b.V_F / b.a * U(rng), b.Omega_F / b.a * U(rng), b.Omega_F / b.b * U(rng)};
    GainMatrix K = box_draw;
    if (i % 3 != 2 && is_feasible(poly)) {
      const GainMatrix g = min_norm_gain(poly).gain;
      if (i % 3 == 0) {
        // A point between the min-norm gain and a random admissible gain,
        // accepted only inside the polytope.
        K = g;
        for (int tries = 0; tries < 50; ++tries) {
          const double lam = 0.5 * U(rng);
          GainMatrix c{g.k11 + lam * (box_draw.k11 - g.k11), g.k22 + lam * (box_draw.k22 - g.k22),
                       g.k23 + lam * (box_draw.k23 - g.k23)};
          const auto v = c.vec();
          if (satisfies(poly, std::span<const double>(v.data(), 3), 0.0)) {
            K = c;
            break;
          }
        }
      } else {
        K = g;
        K.k11 *= 1 + 0.2 * (U(rng) - 0.5);
        K.k22 *= 1 + 0.2 * (U(rng) - 0.5);
        K.k23 *= 1 + 0.2 * (U(rng) - 0.5);
      }
    }
    auto Kq = gain_from_entries(rationalize(K.k11, den), rationalize(K.k22, den), rationalize(K.k23, den));
    const bool euler = check_D_invariant_euler<Rational>(sys, Kq, Rational(1), 0.0).holds;
    const bool cone = check_D_invariant_cone<Rational>(sys, Kq, Rational(1), 0.0).holds;
    if (euler == cone) ++agree;
    if (euler && cone) ++both_hold;
    if (cone && !euler) {
      ++cone_only;
      auto lim = max_euler_step<Rational>(sys, Kq);
      if (lim && *lim > 0 && check_D_invariant_euler<Rational>(sys, Kq, *lim, 0.0).holds) ++euler_at_limit;
    }
    if (euler && !cone) ++euler_only;
  }
  o.note(std::to_string(agree) + "/200 agree, " + std::to_string(both_hold) + " both hold, " +
         std::to_string(cone_only) + " cone-only (" + std::to_string(euler_at_limit) +
         " of them pass Euler at the largest admissible step), " + std::to_string(euler_only) + " Euler-only");
  if (agree != 200) o.fail("verdicts differ at tau = 1");
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto t0 = Clock::now();
  int pairs = 0, failures = 0;
  double worst = -1e9;
  while (pairs < 50) {
    BasicScenario sc = oracle::random_feasible_basic(rng, 1e-3);
    LinearInequalitySystem poly = reduce(gain_polytope(sc));
    if (!is_feasible(poly)) continue;
    SynthesisResult r = min_norm_gain(poly);
    Rationalizer rz;
    ExactUncertainSystem sys = build_basic_system_exact(sc, rz);
    auto Kq = gain_from_entries(r.exact[0], r.exact[1], r.exact[2]);
    if (!check_D_invariant_cone<Rational>(sys, Kq, Rational(1), 0.0).holds) continue;
    if (!check_admissible<Rational>(Kq, sys.S, sys.U, 0.0).holds) continue;
    ++pairs;
    UncertainLinearSystem dsys = sys.cast<double>();
    LinearSwitchingSimulator sim(dsys, r.gain.matrix<double>());
    for (int j = 0; j < 200; ++j) {
      std::vector<double> x0(3);
      for (int k = 0; k < 3; ++k) x0[k] = dsys.S.lo[k] + (dsys.S.hi[k] - dsys.S.lo[k]) * U(rng);
      SwitchingResult res = sim.run(x0, rng());
      worst = std::max(worst, res.max_excess);
      if (!res.stayed) ++failures;
    }
  }
  const double dt = seconds_since(t0);
  o.note("50 x 200 runs, " + std::to_string(failures) + " exits, max excess " + fmt("%.2e", worst) + ", " +
         fmt("%.1f s", dt));
  if (failures) o.fail("trajectories left S");
  return o;
}

Outcome criterion8() {
  Outcome o;
  const double pi = fixtures::pi;
  ChainLengthResult r = max_chain_length(ParameterMaps::constant(0.1, pi / 14, 7), 200);
  const int horner = oracle::chain_length_horner(0.1, pi / 14, 7, 200);
  const int geometric = oracle::chain_length_geometric(0.1, pi / 14, 7, 200);
  o.note("N = " + std::to_string(r.N) + " (oracles " + std::to_string(horner) + ", " + std::to_string(geometric) + ")");
  if (r.N != 34 || horner != 34 || geometric != 34 || r.reached_limit) o.fail("chain length mismatch");

  // With a vanishing head speed the schedule saturates exactly one robot past N.
  std::vector<LinkGeometry> links(60, LinkGeometry{0.1, pi / 14, 7});
  for (double V1 : {1e-9, 0.02}) {
    try {
      min_speed_schedule(links, V1);
      o.fail("no saturation for V_1 = " + fmt("%g", V1));
    } catch (const ChainSaturationError& e) {
      const std::size_t idx = e.robot();
      const bool ok = V1 < 1e-6 ? idx == static_cast<std::size_t>(r.N + 1) : idx <= static_cast<std::size_t>(r.N + 1);
      if (!ok) o.fail("saturation index " + std::to_string(idx) + " for V_1 = " + fmt("%g", V1));
      o.note("saturates at robot " + std::to_string(idx) + " for V_1 = " + fmt("%g", V1));
    }
  }

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int infeasible = 0, exceptions = 0;
  for (int i = 0; i < 200; ++i) {
    ChainSpec spec;
    const std::size_t n = 2 + static_cast<std::size_t>(U(rng) * 7);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      double a = 0.05 + 0.5 * U(rng);
      spec.links.push_back({a, 0.05 + (pi / 2 - 0.05) * U(rng), a + 0.2 + 5 * U(rng)});
    }
    for (std::size_t k = 0; k < n; ++k) spec.robots.push_back({0.01 + 0.98 * U(rng), 0.01 + 2 * U(rng)});
    try {
      if (closed_chain_check(spec).infeasible) ++infeasible;
    } catch (const std::exception&) {
      ++exceptions;
    }
  }
  o.note("closed chains infeasible " + std::to_string(infeasible) + "/200, exceptions " + std::to_string(exceptions));
  if (infeasible != 200 || exceptions) o.fail("closed-chain sweep");
  return o;
}

Outcome criterion9() {
  Outcome o;
  try {
    ChainSpec spec = generate_schedule(0.1, 7, 15, 0.02);
    if (spec.n() != 15) o.fail("wrong robot count");
    if (!feasible_chain(spec).feasible) o.fail("schedule fails feasible_chain");
    for (std::size_t k = 1; k < spec.robots.size(); ++k)
      if (spec.robots[k].V < spec.robots[k - 1].V) o.fail("V decreases at robot " + std::to_string(k + 1));
    for (std::size_t k = 1; k < spec.links.size(); ++k)
      if (spec.links[k].b < spec.links[k - 1].b) o.fail("b decreases at link " + std::to_string(k + 1));
    o.note("V_15 = " + fmt("%.4f", spec.robots.back().V) + ", b_15 = " + fmt("%.4f", spec.links.back().b));
  } catch (const std::exception& e) {
    o.fail(e.what());
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  const std::array<double, 3> s0{0.3285, -0.1626, 0.1071};
  SimTrace coarse = simulate_basic(fixtures::basic(), fixtures::basic_gain(), fixtures::basic_profile(), s0, 60, 1e-3);
  SimTrace fine = simulate_basic(fixtures::basic(), fixtures::basic_gain(), fixtures::basic_profile(), s0, 60, 5e-4);
  const double diff = sup_state_difference(coarse, fine);
  const double rec = std::max(reconstruction_error(coarse), reconstruction_error(fine));
  o.note("step-halving " + fmt("%.2e", diff) + ", reconstruction " + fmt("%.2e", rec));
  if (!(diff < 1e-6)) o.fail("step-halving difference too large");
  if (!(rec < 1e-6)) o.fail("reconstruction mismatch");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 feasibility reproduction", criterion1},
      {"2 gain k11 reproduction", criterion2},
      {"3 printed gain feasibility and norm domination", criterion3},
      {"4 invariance under simulation", criterion4},
      {"5 FME cross-validation", criterion5},
      {"6 Euler/cone certificate agreement", criterion6},
      {"7 linear switching oracle", criterion7},
      {"8 chain bound", criterion8},
      {"9 schedule generation", criterion9},
      {"10 integration fidelity", criterion10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    auto t0 = Clock::now();
    // Library warnings about infeasible random scenarios are expected here.
    std::ostringstream sink;
    std::streambuf* saved = std::cerr.rdbuf(sink.rdbuf());
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cerr.rdbuf(saved);
    o.note("criterion time " + fmt("%.1f s", seconds_since(t0)));
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
