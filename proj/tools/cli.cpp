#include "cli.hpp"

#include <optional>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "vmp/json_io.hpp"

#ifndef VMP_CONFIG_DIR
#define VMP_CONFIG_DIR "configs"
#endif

namespace vmp::cli {

namespace fs = std::filesystem;

std::string default_config_dir() {
  if (const char* env = std::getenv("VMP_CONFIG_DIR")) return env;
  return VMP_CONFIG_DIR;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
}

void emit(std::ostream& out, const json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  out << text;
  if (!out_path.empty()) write_file(out_path, text);
}

// A JSON value that is either inline or a path relative to base.
json resolve(const json& v, const fs::path& base) {
  if (v.is_string()) return load_json_file((base / v.get<std::string>()).string());
  return v;
}

GainMatrix parse_gain_flag(const std::string& text) {
  if (fs::exists(text)) return gain_from_json(load_json_file(text));
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) vals.push_back(parse_number_text(item));
  if (vals.size() != 3) throw InputError("--gain expects a file or \"k11,k22,k23\"");
  return {vals[0], vals[1], vals[2]};
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw InputError("bad variable index \"" + item + "\"");
    }
  }
  return out;
}

struct Synthesis {
  Rationalizer rz;
  LinearInequalitySystem polytope;
  LinearInequalitySystem reduced;
  SynthesisResult result;
  CertificateReport admissible;
  CertificateReport euler;
  CertificateReport cone;
  // Euler step actually certified: tau, shortened to the largest step that
  // keeps every vertex successor inside S.
  Rational euler_tau;
  std::optional<Rational> euler_limit;

  bool certified() const { return admissible.holds && euler.holds && cone.holds; }
};

Synthesis synthesize(const VisibilityScenario& sc, const Rational& tau, double tol) {
  Synthesis s;
  validate(sc);
  Rationalizer sys_rz;
  ExactUncertainSystem sys = build_system_exact(sc, sys_rz);
  if (tau == 1) {
    s.polytope = gain_polytope_for(sc, &s.rz);
  } else {
    s.polytope = gain_polytope_from_system(sys, tau);
  }
  s.reduced = reduce(s.polytope);
  if (!is_feasible(s.reduced)) throw InfeasibleError("gain polytope is empty");
  s.result = min_norm_gain(s.reduced);
  const auto K = gain_from_entries(s.result.exact[0], s.result.exact[1], s.result.exact[2]);
  s.admissible = check_admissible<Rational>(K, sys.S, sys.U, tol);
  s.euler_limit = max_euler_step<Rational>(sys, K);
  s.euler_tau = tau;
  if (s.euler_limit && *s.euler_limit > 0 && *s.euler_limit < tau) s.euler_tau = *s.euler_limit;
  s.euler = check_D_invariant_euler<Rational>(sys, K, s.euler_tau, tol);
  s.cone = check_D_invariant_cone<Rational>(sys, K, tau, tol);
  return s;
}

json synthesis_json(const Synthesis& s, const Rational& tau) {
  json j;
  j["tau"] = to_string(tau);
  j["polytope_rows"] = s.polytope.size();
  j["reduced_rows"] = s.reduced.size();
  j["synthesis"] = to_json(s.result);
  j["strictly_interior"] = is_strictly_interior(s.reduced, s.result.gain);
  j["certificates"] = {{"admissible", to_json(s.admissible)},
                       {"D_invariant_euler", to_json(s.euler)},
                       {"D_invariant_cone", to_json(s.cone)}};
  j["euler_tau"] = to_string(s.euler_tau);
  j["euler_tau_value"] = to_double(s.euler_tau);
  j["euler_step_limit"] = s.euler_limit ? json(to_double(*s.euler_limit)) : json(nullptr);
  j["certified"] = s.certified();
  j["rationalization"] = to_json(s.rz);
  return j;
}

std::array<double, 3> state_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InputError("initial states are arrays of three numbers");
  std::array<double, 3> s{};
  for (int i = 0; i < 3; ++i) {
    if (j[i].is_number()) {
      s[i] = j[i].get<double>();
    } else if (j[i].is_string()) {
      s[i] = parse_number_text(j[i].get<std::string>());
    } else {
      throw InputError("initial state entries must be numbers");
    }
  }
  return s;
}

HSampler noise_from_json(const json& j, std::optional<std::uint64_t> seed_override) {
  const std::string type = j.value("type", std::string("uniform"));
  if (type == "uniform") {
    double amp_F = 0.1, amp_L = 0.1;
    if (j.contains("amplitude")) {
      const json& a = j["amplitude"];
      if (a.is_array() && a.size() == 2) {
        amp_F = a[0].get<double>();
        amp_L = a[1].get<double>();
      } else {
        amp_F = amp_L = a.get<double>();
      }
    }
    std::uint64_t seed = seed_override.value_or(j.value("seed", static_cast<std::uint64_t>(0)));
    return uniform_noise(amp_F, amp_L, seed);
  }
  if (type == "constant") {
    const json& h = j.at("h");
    return constant_noise(h.at(0).get<double>(), h.at(1).get<double>());
  }
  if (type == "none") return constant_noise(0.0, 0.0);
  throw InputError("unknown noise type \"" + type + "\"");
}

struct SimOutcome {
  json report;
  bool clean = true;
};

struct SimSettings {
  std::optional<double> T;
  std::optional<double> dt;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> gain;
  double tol = kMonitorTol;
  double tau_synth_tol = 0.0;
};

json link_report(const SimTrace& tr, const Box<double>& S, const Box<double>& U, double tol, const fs::path& csv) {
  ViolationReport rep = monitor(tr, S, U, tol);
  json j = to_json(rep);
  j["clamp_events"] = tr.clamp_events;
  j["reconstruction_error"] = reconstruction_error(tr);
  j["min_distance"] = min_distance(tr);
  j["gain"] = gain_to_json(tr.meta.K);
  if (!csv.empty()) {
    write_file(csv, tr.to_csv());
    j["csv"] = csv.string();
  }
  return j;
}

SimOutcome run_bundle(const json& bundle, const fs::path& base, const SimSettings& st, const fs::path& out_dir) {
  SimOutcome o;
  const double T = st.T.value_or(bundle.contains("T") ? number_field(bundle, "T") : 60.0);
  const double dt = st.dt.value_or(bundle.contains("dt") ? number_field(bundle, "dt") : 1e-3);
  if (!(dt > 0) || !(T > 0)) throw InputError("--dt and --horizon must be positive");
  if (!bundle.contains("profile")) throw InputError("simulation bundle needs a profile");
  const LeaderProfile profile = profile_from_json(bundle["profile"]);
  json rep;
  rep["T"] = T;
  rep["dt"] = dt;
  rep["profile"] = profile_to_json(profile);
  rep["links"] = json::array();

  if (bundle.contains("chain")) {
    ChainSpec spec = chain_from_json(resolve(bundle["chain"], base));
    std::vector<GainMatrix> gains;
    const json gj = bundle.value("gains", json("min_norm"));
    if (gj.is_string() && gj.get<std::string>() == "min_norm") {
      for (std::size_t k = 0; k + 1 < spec.n(); ++k) {
        gains.push_back(synthesize(spec.pair(k), Rational(1), st.tau_synth_tol).result.gain);
      }
    } else {
      if (!gj.is_array()) throw InputError("chain gains must be an array or \"min_norm\"");
      for (const auto& g : gj) gains.push_back(gain_from_json(g));
    }
    std::vector<std::array<double, 3>> s0;
    for (const auto& s : bundle.at("s0")) s0.push_back(state_from_json(s));
    auto traces = simulate_chain(spec, gains, profile, s0, T, dt);
    rep["scenario_type"] = "chain";
    for (std::size_t k = 0; k < traces.size(); ++k) {
      BasicScenario pair = spec.pair(k);
      fs::path csv = out_dir.empty() ? fs::path() : out_dir / ("link_" + std::to_string(k + 1) + ".csv");
      json lr = link_report(traces[k], Box<double>::symmetric({pair.a, pair.a, pair.b}),
                            Box<double>::symmetric({pair.V_F, pair.Omega_F}), st.tol, csv);
      o.clean = o.clean && lr["clean"].get<bool>();
      rep["links"].push_back(lr);
    }
  } else {
    VisibilityScenario sc = scenario_from_json(resolve(bundle.at("scenario"), base));
    GainMatrix K;
    if (st.gain) {
      K = parse_gain_flag(*st.gain);
    } else {
      const json gj = bundle.value("gain", json("min_norm"));
      if (gj.is_string() && gj.get<std::string>() == "min_norm") {
        K = synthesize(sc, Rational(1), st.tau_synth_tol).result.gain;
      } else {
        K = gain_from_json(gj);
      }
    }
    const auto s0 = state_from_json(bundle.at("s0"));
    SimTrace tr;
    Box<double> S = Box<double>::symmetric({1.0, 1.0, 1.0});
    Box<double> U = S;
    if (const auto* b = std::get_if<BasicScenario>(&sc)) {
      tr = simulate_basic(*b, K, profile, s0, T, dt);
      S = Box<double>::symmetric({b->a, b->a, b->b});
      U = Box<double>::symmetric({b->V_F, b->Omega_F});
    } else if (const auto* u = std::get_if<UbbScenario>(&sc)) {
      HSampler h = noise_from_json(bundle.value("noise", json::object()), st.seed);
      tr = simulate_ubb(*u, K, profile, h, s0, T, dt);
      S = Box<double>::symmetric({u->basic.a, u->basic.a, u->basic.b});
      U = Box<double>::symmetric({u->basic.V_F, u->basic.Omega_F});
    } else {
      const auto& c = std::get<CircleScenario>(sc);
      tr = simulate_circle(c, K, profile, s0, T, dt);
      S = Box<double>::symmetric({c.a, c.a, c.b});
      U = Box<double>::symmetric({c.V_F, c.Omega_F});
    }
    rep["scenario_type"] = scenario_type(sc);
    fs::path csv = out_dir.empty() ? fs::path() : out_dir / "trace.csv";
    json lr = link_report(tr, S, U, st.tol, csv);
    o.clean = lr["clean"].get<bool>();
    rep["links"].push_back(lr);
  }
  rep["clean"] = o.clean;
  o.report = rep;
  return o;
}

json chain_report(const ChainSpec& spec) {
  json j;
  j["feasibility"] = to_json(feasible_chain(spec));
  std::vector<double> V;
  try {
    V = min_speed_schedule(spec.links, spec.robots.front().V);
    j["min_speed_schedule"] = V;
  } catch (const ChainSaturationError& e) {
    j["min_speed_schedule"] = {{"saturated_at", e.robot()}, {"message", e.what()}};
  }
  return j;
}

ParameterMaps maps_from_json(const json& j) {
  auto one = [&](const char* key) -> std::function<double(int)> {
    const json& v = j.at(key);
    if (v.is_array()) {
      std::vector<double> vals;
      for (const auto& x : v) vals.push_back(x.is_string() ? parse_number_text(x.get<std::string>()) : x.get<double>());
      return [vals, key = std::string(key)](int i) {
        auto idx = static_cast<std::size_t>(i - 2);
        if (i < 2 || idx >= vals.size()) throw InputError("map " + key + " has no entry for robot " + std::to_string(i));
        return vals[idx];
      };
    }
    double c = v.is_string() ? parse_number_text(v.get<std::string>()) : v.get<double>();
    return [c](int) { return c; };
  };
  return {one("a"), one("b"), one("d")};
}

int cmd_check(const std::string& path, const std::string& out_path, std::ostream& out) {
  json j = load_json_file(path);
  json rep;
  bool ok = false;
  if (is_chain_json(j)) {
    ChainSpec spec = chain_from_json(j);
    FeasibilityReport r = feasible_chain(spec);
    rep["type"] = "chain";
    rep["report"] = to_json(r);
    ok = r.feasible;
  } else {
    VisibilityScenario sc = scenario_from_json(j);
    FeasibilityReport r = feasibility(sc);
    rep["type"] = scenario_type(sc);
    rep["report"] = to_json(r);
    ok = r.feasible;
  }
  emit(out, rep, out_path);
  return ok ? kExitOk : kExitInfeasible;
}

int cmd_synth(const std::string& path, const std::string& tau_text, double tol, const std::string& out_path,
              const std::string& poly_path, std::ostream& out) {
  const Rational tau = parse_rational(tau_text);
  if (!(tau > 0)) throw InputError("--tau must be positive");
  json j = load_json_file(path);
  json rep;
  bool ok = true;
  if (is_chain_json(j)) {
    ChainSpec spec = chain_from_json(j);
    rep["type"] = "chain";
    rep["links"] = json::array();
    std::string dumps;
    for (std::size_t k = 0; k + 1 < spec.n(); ++k) {
      Synthesis s = synthesize(spec.pair(k), tau, tol);
      rep["links"].push_back(synthesis_json(s, tau));
      ok = ok && s.certified();
      dumps += "# link " + std::to_string(k + 1) + "\n" + dump(s.reduced);
    }
    if (!poly_path.empty()) write_file(poly_path, dumps);
  } else {
    VisibilityScenario sc = scenario_from_json(j);
    Synthesis s = synthesize(sc, tau, tol);
    rep = synthesis_json(s, tau);
    rep["type"] = scenario_type(sc);
    ok = s.certified();
    if (!poly_path.empty()) write_file(poly_path, dump(s.polytope));
  }
  emit(out, rep, out_path);
  return ok ? kExitOk : kExitInfeasible;
}

int cmd_simulate(const std::string& path, const SimSettings& st, const std::string& out_dir, std::ostream& out) {
  json bundle = load_json_file(path);
  const fs::path base = fs::path(path).parent_path();
  SimOutcome o = run_bundle(bundle, base, st, out_dir);
  emit(out, o.report, out_dir.empty() ? "" : (fs::path(out_dir) / "report.json").string());
  return o.clean ? kExitOk : kExitInfeasible;
}

struct ChainArgs {
  std::string scenario;
  std::string maps;
  int n_max = 200;
  std::size_t generate = 0;
  double a = 0.1;
  double d = 7.0;
  double V1 = 0.02;
  double safety = 0.1;
  bool closed = false;
  std::string wrap;
  std::string out;
};

int cmd_chain(const ChainArgs& ca, std::ostream& out) {
  json rep;
  int code = kExitOk;
  if (ca.scenario.empty() && ca.maps.empty() && ca.generate == 0) {
    throw InputError("chain needs --scenario, --maps or --generate");
  }
  if (!ca.scenario.empty()) {
    ChainSpec spec = chain_from_json(load_json_file(ca.scenario));
    rep["spec"] = chain_report(spec);
    if (!rep["spec"]["feasibility"]["feasible"].get<bool>()) code = kExitInfeasible;
    if (ca.closed) {
      std::optional<LinkGeometry> wrap;
      if (!ca.wrap.empty()) {
        std::vector<double> v;
        std::stringstream ss(ca.wrap);
        std::string item;
        while (std::getline(ss, item, ',')) v.push_back(parse_number_text(item));
        if (v.size() != 3) throw InputError("--wrap expects \"a,b,d\"");
        wrap = LinkGeometry{v[0], v[1], v[2]};
      }
      ClosedChainReport cr = closed_chain_check(spec, wrap);
      rep["closed_chain"] = to_json(cr);
      if (cr.infeasible) code = kExitInfeasible;
    }
  }
  if (!ca.maps.empty()) {
    json mj = load_json_file(ca.maps);
    int n_max = mj.contains("n_max") ? mj["n_max"].get<int>() : ca.n_max;
    ChainLengthResult r = max_chain_length(maps_from_json(mj), n_max);
    rep["max_chain_length"] = {{"N", r.N}, {"n_max", n_max}, {"reached_limit", r.reached_limit}};
  }
  if (ca.generate > 0) {
    try {
      ChainSpec spec = generate_schedule(ca.a, ca.d, ca.generate, ca.V1, ca.safety);
      rep["schedule"] = chain_to_json(spec);
      rep["schedule_check"] = to_json(feasible_chain(spec));
    } catch (const ScheduleError& e) {
      rep["schedule_error"] = {
          {"message", e.what()}, {"failing_robot", e.failing_robot()}, {"achievable", e.achievable()}};
      code = kExitInfeasible;
    }
  }
  emit(out, rep, ca.out);
  return code;
}

int cmd_fme(const std::string& path, const std::string& elim, const std::string& out_path, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  LinearInequalitySystem sys = parse_system(ss.str());
  std::vector<std::size_t> drop;
  if (elim.empty() || elim == "all") {
    for (std::size_t v = 0; v < sys.num_vars(); ++v) drop.push_back(v);
  } else {
    drop = parse_index_list(elim);
  }
  std::vector<std::size_t> keep;
  for (std::size_t v = 0; v < sys.num_vars(); ++v) {
    if (std::find(drop.begin(), drop.end(), v) == drop.end()) keep.push_back(v);
  }
  for (std::size_t v : drop) {
    if (v >= sys.num_vars()) throw InputError("variable index " + std::to_string(v) + " out of range");
  }
  LinearInequalitySystem projected = project(sys, keep);
  const bool feasible = is_feasible(projected);
  std::string text = "# kept variables:";
  for (std::size_t v : keep) text += " " + std::to_string(v);
  text += "\n";
  text += dump(reduce(projected));
  text += std::string("# verdict: ") + (feasible ? "feasible" : "infeasible") + "\n";
  if (!feasible) {
    for (const auto& r : projected.rows()) {
      if (r.is_constant() && r.rhs < 0) {
        text += "# contradiction: " + format_row(r) + "\n";
        break;
      }
    }
  }
  out << text;
  if (!out_path.empty()) write_file(out_path, text);
  return feasible ? kExitOk : kExitInfeasible;
}

int cmd_demo(const std::string& config_dir, const std::string& out_dir, std::ostream& out) {
  const fs::path cfg(config_dir);
  const fs::path dst(out_dir.empty() ? "demo_out" : out_dir);
  struct Item {
    const char* name;
    const char* scenario;
    const char* bundle;
  };
  const Item items[] = {{"basic", "basic.json", "sim_basic.json"},
                        {"ubb", "ubb.json", "sim_ubb.json"},
                        {"circle", "circle.json", "sim_circle.json"},
                        {"chain", "chain.json", "sim_chain.json"}};
  json summary = json::object();
  bool all_ok = true;
  for (const auto& it : items) {
    const fs::path dir = dst / it.name;
    std::ostringstream sink;
    json entry;
    int check = cmd_check((cfg / it.scenario).string(), (dir / "check.json").string(), sink);
    int synth = cmd_synth((cfg / it.scenario).string(), "1", 0.0, (dir / "synth.json").string(),
                          (dir / "polytope.txt").string(), sink);
    int sim = cmd_simulate((cfg / it.bundle).string(), SimSettings{}, dir.string(), sink);
    entry["check"] = check;
    entry["synth"] = synth;
    entry["simulate"] = sim;
    entry["output"] = dir.string();
    all_ok = all_ok && check == kExitOk && synth == kExitOk && sim == kExitOk;
    summary[it.name] = entry;
  }
  summary["ok"] = all_ok;
  out << summary.dump(2) << "\n";
  return all_ok ? kExitOk : kExitInfeasible;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Visibility maintenance controller synthesis and certification"};
  app.name("vmpctl");
  app.require_subcommand(1);

  std::string scenario, out_path, gain, tau = "1", poly_out, eliminate, input, configs = default_config_dir();
  double tol = -1.0;
  std::optional<double> dt, horizon;
  std::optional<std::uint64_t> seed;
  ChainArgs ca;

  auto* check = app.add_subcommand("check", "Evaluate closed-form solvability conditions");
  check->add_option("--scenario", scenario, "Scenario or chain JSON")->required();
  check->add_option("--out", out_path, "Also write the JSON report here");

  auto* synth = app.add_subcommand("synth", "Build the gain polytope and select the minimum-norm gain");
  synth->add_option("--scenario", scenario, "Scenario or chain JSON")->required();
  synth->add_option("--tau", tau, "Euler step for the certificates (rational)");
  synth->add_option("--tol", tol, "Certificate tolerance (default exact)");
  synth->add_option("--out", out_path, "Also write the JSON report here");
  synth->add_option("--polytope-out", poly_out, "Write the polytope in text form");

  auto* sim = app.add_subcommand("simulate", "Integrate the nonlinear closed loop and monitor bounds");
  sim->add_option("--scenario", scenario, "Simulation bundle JSON")->required();
  sim->add_option("--gain", gain, "Gain file or \"k11,k22,k23\"");
  sim->add_option("--dt", dt, "Integration step [s]");
  sim->add_option("--horizon", horizon, "Horizon T [s]");
  sim->add_option("--seed", seed, "Seed for stochastic disturbances");
  sim->add_option("--tol", tol, "Monitor tolerance (default 1e-9)");
  sim->add_option("--out", out_path, "Output directory for CSV traces and report.json");

  auto* chain = app.add_subcommand("chain", "Chain feasibility, schedules and length bounds");
  chain->add_option("--scenario", ca.scenario, "Chain spec JSON");
  chain->add_flag("--closed", ca.closed, "Append the wrap-around condition");
  chain->add_option("--wrap", ca.wrap, "Wrap link geometry \"a,b,d\"");
  chain->add_option("--maps", ca.maps, "Parameter maps JSON for the length bound");
  chain->add_option("--n-max", ca.n_max, "Search limit for the length bound");
  chain->add_option("--generate", ca.generate, "Generate a schedule for this many robots");
  chain->add_option("--a", ca.a, "Generated schedule: a");
  chain->add_option("--d", ca.d, "Generated schedule: d");
  chain->add_option("--V1", ca.V1, "Generated schedule: V_1");
  chain->add_option("--safety", ca.safety, "Generated schedule: safety fraction");
  chain->add_option("--out", ca.out, "Also write the JSON report here");

  auto* fme = app.add_subcommand("fme", "Fourier-Motzkin projection of an inequality file");
  fme->add_option("--input", input, "Inequality system in text form")->required();
  fme->add_option("--eliminate", eliminate, "Comma-separated variable indices, or \"all\" (default)");
  fme->add_option("--out", out_path, "Also write the result here");

  auto* demo = app.add_subcommand("demo", "Regenerate the four experiment bundles");
  demo->add_option("--configs", configs, "Directory with the shipped configs");
  demo->add_option("--out", out_path, "Output directory (default demo_out)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*check) return cmd_check(scenario, out_path, out);
    if (*synth) return cmd_synth(scenario, tau, tol < 0 ? 0.0 : tol, out_path, poly_out, out);
    if (*sim) {
      SimSettings st;
      st.T = horizon;
      st.dt = dt;
      st.seed = seed;
      if (!gain.empty()) st.gain = gain;
      if (tol >= 0) st.tol = tol;
      return cmd_simulate(scenario, st, out_path, out);
    }
    if (*chain) return cmd_chain(ca, out);
    if (*fme) return cmd_fme(input, eliminate, out_path, out);
    if (*demo) return cmd_demo(configs, out_path, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace vmp::cli
