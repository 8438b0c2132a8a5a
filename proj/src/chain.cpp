#include "vmp/chain.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace vmp {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_link(const LinkGeometry& g, const std::string& where) {
  if (!(g.a > 0 && g.d > g.a)) throw InputError(where + ": needs d > a > 0");
  if (!(g.b > 0 && g.b <= kHalfPi)) throw InputError(where + ": needs 0 < b <= pi/2");
}

// Multiplicative and additive terms of the speed recursion.
double growth(const LinkGeometry& g) { return 1 + g.a * std::sin(g.b) / (g.d - g.a); }
double offset(const LinkGeometry& g) { return 1 - std::cos(g.b) + g.a * g.b / (g.d - g.a); }

double speed_bound(const LinkGeometry& g, double V_prev) {
  return V_prev * (1 + g.a * std::sin(g.b) / (g.d - g.a)) + 1 - std::cos(g.b) + g.a * g.b / (g.d - g.a);
}
double omega_lower(const LinkGeometry& g, double V_prev) { return (V_prev * std::sin(g.b) + g.b) / (g.d - g.a); }
double omega_upper(const LinkGeometry& next, double V) { return (1 - V) * std::sin(next.b) / (next.d + next.a); }

LinkGeometry map_link(const ParameterMaps& maps, int i) {
  LinkGeometry g{maps.f_a(i), maps.f_b(i), maps.f_d(i)};
  check_link(g, "parameter maps at robot " + std::to_string(i));
  return g;
}

}  // namespace

void ChainSpec::validate() const {
  if (robots.size() < 2) throw InputError("a chain needs at least two robots");
  if (links.size() + 1 != robots.size()) throw InputError("a chain of n robots needs n - 1 links");
  for (std::size_t k = 0; k < links.size(); ++k) check_link(links[k], "link " + std::to_string(k + 2));
  for (std::size_t k = 0; k < robots.size(); ++k) {
    const auto& r = robots[k];
    if (!(r.V > 0 && r.V < 1)) throw InputError("robot " + std::to_string(k + 1) + ": V must lie in (0, 1)");
    if (!(r.Omega > 0)) throw InputError("robot " + std::to_string(k + 1) + ": Omega must be positive");
  }
}

BasicScenario ChainSpec::pair(std::size_t k) const {
  if (k + 1 >= robots.size()) throw InputError("chain pair index out of range");
  const LinkGeometry& g = links[k];
  return BasicScenario{g.a, g.b, g.d, robots[k + 1].V, robots[k].V, robots[k + 1].Omega, robots[k].Omega};
}

ParameterMaps ParameterMaps::constant(double a, double b, double d) {
  return {[a](int) { return a; }, [b](int) { return b; }, [d](int) { return d; }};
}

FeasibilityReport feasible_chain(const ChainSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n();
  const auto& R = spec.robots;
  const auto& L = spec.links;
  FeasibilityReport rep;
  for (std::size_t k = 1; k < n; ++k) {
    rep.add("V_" + std::to_string(k + 1) + " lower bound", speed_bound(L[k - 1], R[k - 1].V), R[k].V);
  }
  rep.add("Omega_1 upper bound", R[0].Omega, omega_upper(L[0], R[0].V));
  for (std::size_t k = 2; k < n; ++k) {
    // Robot k (1-based) follows k-1 through link k and is followed through link k+1.
    rep.add("Omega_" + std::to_string(k) + " lower bound", omega_lower(L[k - 2], R[k - 2].V), R[k - 1].Omega);
    rep.add("Omega_" + std::to_string(k) + " upper bound", R[k - 1].Omega, omega_upper(L[k - 1], R[k - 1].V));
  }
  rep.add("Omega_" + std::to_string(n) + " lower bound", omega_lower(L[n - 2], R[n - 2].V), R[n - 1].Omega);
  return rep;
}

std::vector<double> min_speed_schedule(const std::vector<LinkGeometry>& links, double V_1) {
  if (!(V_1 > 0 && V_1 < 1)) throw InputError("V_1 must lie in (0, 1)");
  std::vector<double> V{V_1};
  for (std::size_t k = 0; k < links.size(); ++k) {
    check_link(links[k], "link " + std::to_string(k + 2));
    double next = speed_bound(links[k], V.back());
    if (next >= 1) {
      throw ChainSaturationError("minimum speed of robot " + std::to_string(k + 2) + " reaches 1", k + 2);
    }
    V.push_back(next);
  }
  return V;
}

ChainLengthResult max_chain_length(const ParameterMaps& maps, int n_max) {
  if (n_max < 1) throw InputError("n_max must be at least 1");
  std::vector<LinkGeometry> g(static_cast<std::size_t>(n_max) + 1);
  for (int i = 2; i <= n_max; ++i) g[static_cast<std::size_t>(i)] = map_link(maps, i);
  for (int N = 2; N <= n_max; ++N) {
    double sum = 0.0;
    for (int i = 2; i <= N; ++i) {
      double term = offset(g[static_cast<std::size_t>(i)]);
      for (int k = i + 1; k <= N; ++k) term *= growth(g[static_cast<std::size_t>(k)]);
      sum += term;
    }
    if (!(sum < 1)) return {N - 1, false};
  }
  return {n_max, true};
}

ClosedChainReport closed_chain_check(const ChainSpec& spec, std::optional<LinkGeometry> wrap) {
  spec.validate();
  const LinkGeometry w = wrap.value_or(spec.links.front());
  check_link(w, "wrap link");
  ClosedChainReport out;
  out.report = feasible_chain(spec);
  const double V_1 = spec.robots.front().V;
  const double V_n = spec.robots.back().V;
  out.report.add("V_1 lower bound (wrap)", speed_bound(w, V_n), V_1);

  // Unroll V_n >= V_1 prod(growth) + sum into an upper bound on V_1.
  double prod = 1.0;
  double sum = 0.0;
  for (const auto& g : spec.links) {
    sum = sum * growth(g) + offset(g);
    prod *= growth(g);
  }
  out.chain_upper_bound_V1 = (V_n - sum) / prod;
  out.wrap_lower_bound_V1 = speed_bound(w, V_n);
  const bool contradiction = out.chain_upper_bound_V1 < out.wrap_lower_bound_V1;
  out.infeasible = contradiction || !out.report.feasible;
  std::ostringstream os;
  os.precision(10);
  os << "open-chain speed rows give V_1 <= " << out.chain_upper_bound_V1 << ", wrap row gives V_1 >= "
     << out.wrap_lower_bound_V1;
  out.witness = os.str();
  return out;
}

namespace {

struct Attempt {
  std::optional<ChainSpec> spec;
  std::size_t failing_robot = 0;
};

Attempt build_schedule(double a, double d, std::size_t n, double V_1, double s, double b2) {
  Attempt out;
  std::vector<LinkGeometry> links;
  std::vector<double> V{V_1};
  links.push_back({a, b2, d});
  for (std::size_t k = 2; k <= n; ++k) {
    const LinkGeometry& g = links[k - 2];
    double Vk = (1 + s) * speed_bound(g, V[k - 2]);
    if (Vk >= 1) {
      out.failing_robot = k;
      return out;
    }
    V.push_back(Vk);
    if (k == n) break;
    // Smallest b_{k+1} leaving robot k a sandwich of relative width 1 + s.
    double need = (1 + s) * omega_lower(g, V[k - 2]) * (d + a) / (1 - Vk);
    if (need > 1) {
      out.failing_robot = k + 1;
      return out;
    }
    links.push_back({a, std::max(g.b, std::asin(need)), d});
  }
  ChainSpec spec;
  spec.links = links;
  spec.robots.resize(n);
  for (std::size_t k = 0; k < n; ++k) spec.robots[k].V = V[k];
  spec.robots[0].Omega = omega_upper(links[0], V[0]) / (1 + s);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    double lo = omega_lower(links[k - 1], V[k - 1]);
    double hi = omega_upper(links[k], V[k]);
    spec.robots[k].Omega = std::sqrt(lo * hi);
  }
  spec.robots[n - 1].Omega = (1 + s) * omega_lower(links[n - 2], V[n - 2]);
  if (!feasible_chain(spec).feasible) {
    out.failing_robot = n;
    return out;
  }
  out.spec = std::move(spec);
  return out;
}

constexpr double kSmallestB = 1e-6;

}  // namespace

ChainSpec generate_schedule(double a, double d, std::size_t n, double V_1, double safety) {
  if (!(a > 0 && d > a)) throw InputError("generate_schedule needs d > a > 0");
  if (n < 2) throw InputError("generate_schedule needs n >= 2");
  if (!(V_1 > 0 && V_1 < 1)) throw InputError("V_1 must lie in (0, 1)");
  if (!(safety > 0 && safety < 1)) throw InputError("safety must lie in (0, 1)");

  Attempt low = build_schedule(a, d, n, V_1, safety, kSmallestB);
  if (!low.spec) {
    std::size_t achievable = 1;
    for (std::size_t m = n - 1; m >= 2; --m) {
      if (build_schedule(a, d, m, V_1, safety, kSmallestB).spec) {
        achievable = m;
        break;
      }
    }
    throw ScheduleError("no schedule for " + std::to_string(n) + " robots; fails at robot " +
                            std::to_string(low.failing_robot) + ", longest achievable chain has " +
                            std::to_string(achievable) + " robots",
                        low.failing_robot, achievable);
  }
  // Largest feasible b_2 by bisection, then backed off by the safety fraction.
  double lo = kSmallestB;
  double hi = kHalfPi;
  if (build_schedule(a, d, n, V_1, safety, hi).spec) {
    lo = hi;
  } else {
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      if (build_schedule(a, d, n, V_1, safety, mid).spec) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  double b2 = std::max(kSmallestB, (1 - safety) * lo);
  Attempt chosen = build_schedule(a, d, n, V_1, safety, b2);
  while (!chosen.spec) {
    b2 = std::max(kSmallestB, 0.5 * b2);
    chosen = build_schedule(a, d, n, V_1, safety, b2);
  }
  chosen.spec->provenance = ScheduleProvenance{
      a, d, V_1, safety,
      "b_2 = (1 - safety) * largest feasible b_2; b_{k+1} = max(b_k, asin((1 + safety) * lower_k * (d + a) / "
      "(1 - V_k))); V_{k+1} = (1 + safety) * minimum speed; Omega_k = geometric mean of its bounds, ends at "
      "bound scaled by (1 + safety)"};
  return *chosen.spec;
}

}  // namespace vmp
