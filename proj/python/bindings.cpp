#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vmp/json_io.hpp"

namespace py = pybind11;
using namespace vmp;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) {
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

VisibilityScenario as_scenario(const py::object& o) {
  if (py::isinstance<BasicScenario>(o)) return o.cast<BasicScenario>();
  if (py::isinstance<UbbScenario>(o)) return o.cast<UbbScenario>();
  if (py::isinstance<CircleScenario>(o)) return o.cast<CircleScenario>();
  if (py::isinstance<py::dict>(o)) return scenario_from_json(from_py(o));
  throw InputError("expected a scenario object or dict");
}

json synthesize_json(const VisibilityScenario& sc) {
  Rationalizer rz;
  ExactUncertainSystem sys = build_system_exact(sc, rz);
  LinearInequalitySystem reduced = reduce(gain_polytope_for(sc, &rz));
  SynthesisResult res = min_norm_gain(reduced);
  auto K = gain_from_entries(res.exact[0], res.exact[1], res.exact[2]);
  json j = to_json(res);
  j["reduced_rows"] = reduced.size();
  j["admissible"] = check_admissible<Rational>(K, sys.S, sys.U, 0.0).holds;
  j["D_invariant_cone"] = check_D_invariant_cone<Rational>(sys, K, Rational(1), 0.0).holds;
  j["D_invariant_euler"] = check_D_invariant_euler<Rational>(sys, K, Rational(1), 0.0).holds;
  return j;
}

}  // namespace

PYBIND11_MODULE(_vmp, m) {
  m.doc() = "Visibility-maintenance controller synthesis and certification";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);

  py::class_<BasicScenario>(m, "BasicScenario")
      .def(py::init([](double a, double b, double d, double V_F, double V_L, double Omega_F, double Omega_L) {
             BasicScenario s{a, b, d, V_F, V_L, Omega_F, Omega_L};
             s.validate();
             return s;
           }),
           py::arg("a"), py::arg("b"), py::arg("d"), py::arg("V_F"), py::arg("V_L"), py::arg("Omega_F"),
           py::arg("Omega_L"))
      .def_readwrite("a", &BasicScenario::a)
      .def_readwrite("b", &BasicScenario::b)
      .def_readwrite("d", &BasicScenario::d)
      .def_readwrite("V_F", &BasicScenario::V_F)
      .def_readwrite("V_L", &BasicScenario::V_L)
      .def_readwrite("Omega_F", &BasicScenario::Omega_F)
      .def_readwrite("Omega_L", &BasicScenario::Omega_L);

  py::class_<UbbScenario>(m, "UbbScenario")
      .def(py::init([](const BasicScenario& b, double H_F, double H_L) {
             UbbScenario s{b, H_F, H_L};
             s.validate();
             return s;
           }),
           py::arg("basic"), py::arg("H_F"), py::arg("H_L"))
      .def_readwrite("basic", &UbbScenario::basic)
      .def_readwrite("H_F", &UbbScenario::H_F)
      .def_readwrite("H_L", &UbbScenario::H_L);

  py::class_<CircleScenario>(m, "CircleScenario")
      .def(py::init([](double a, double b, double gamma, double rho, double V_F, double V_L, double Omega_F,
                       double Omega_L) {
             CircleScenario s{a, b, gamma, rho, V_F, V_L, Omega_F, Omega_L};
             s.validate();
             return s;
           }),
           py::arg("a"), py::arg("b"), py::arg("gamma"), py::arg("rho"), py::arg("V_F"), py::arg("V_L"),
           py::arg("Omega_F"), py::arg("Omega_L"))
      .def_readwrite("a", &CircleScenario::a)
      .def_readwrite("b", &CircleScenario::b)
      .def_readwrite("gamma", &CircleScenario::gamma)
      .def_readwrite("rho", &CircleScenario::rho)
      .def_readwrite("V_F", &CircleScenario::V_F)
      .def_readwrite("V_L", &CircleScenario::V_L)
      .def_readwrite("Omega_F", &CircleScenario::Omega_F)
      .def_readwrite("Omega_L", &CircleScenario::Omega_L);

  py::class_<GainMatrix>(m, "GainMatrix")
      .def(py::init([](double k11, double k22, double k23) { return GainMatrix{k11, k22, k23}; }), py::arg("k11"),
           py::arg("k22"), py::arg("k23"))
      .def_readwrite("k11", &GainMatrix::k11)
      .def_readwrite("k22", &GainMatrix::k22)
      .def_readwrite("k23", &GainMatrix::k23)
      .def("norm", &GainMatrix::norm)
      .def("__repr__", [](const GainMatrix& K) {
        return "GainMatrix(" + std::to_string(K.k11) + ", " + std::to_string(K.k22) + ", " + std::to_string(K.k23) +
               ")";
      });

  py::class_<LinearInequalitySystem>(m, "InequalitySystem")
      .def_property_readonly("num_vars", &LinearInequalitySystem::num_vars)
      .def("__len__", &LinearInequalitySystem::size)
      .def("dump", [](const LinearInequalitySystem& s) { return dump(s); })
      .def("is_feasible", [](const LinearInequalitySystem& s) { return is_feasible(s); })
      .def("reduce", [](const LinearInequalitySystem& s) { return reduce(s); })
      .def("eliminate", [](const LinearInequalitySystem& s, std::size_t v) { return eliminate(s, v); })
      .def("project", [](const LinearInequalitySystem& s, const std::vector<std::size_t>& keep) {
        return project(s, keep);
      })
      .def("satisfies", [](const LinearInequalitySystem& s, const std::vector<double>& x, double tol) {
        return satisfies(s, std::span<const double>(x), tol);
      }, py::arg("point"), py::arg("tol") = 0.0);

  m.def("parse_system", [](const std::string& text) { return parse_system(text); });

  m.def("feasibility", [](const py::object& sc) { return to_py(to_json(feasibility(as_scenario(sc)))); });
  m.def("gain_polytope", [](const py::object& sc) { return gain_polytope_for(as_scenario(sc)); });
  m.def("derive_conditions_fme", [](const BasicScenario& sc) { return derive_conditions_fme(sc); });
  m.def("min_norm_gain", [](const LinearInequalitySystem& s) { return to_py(to_json(min_norm_gain(s))); });
  m.def("synthesize", [](const py::object& sc) { return to_py(synthesize_json(as_scenario(sc))); });
  m.def(
      "certify",
      [](const py::object& o, const GainMatrix& K, double tau) {
        VisibilityScenario sc = as_scenario(o);
        Rationalizer rz;
        ExactUncertainSystem sys = build_system_exact(sc, rz);
        auto Kq = gain_from_entries(Rational(K.k11), Rational(K.k22), Rational(K.k23));
        Rational t = rationalize(tau);
        py::dict d;
        d["admissible"] = check_admissible<Rational>(Kq, sys.S, sys.U, 0.0).holds;
        d["D_invariant_cone"] = check_D_invariant_cone<Rational>(sys, Kq, t, 0.0).holds;
        d["D_invariant_euler"] = check_D_invariant_euler<Rational>(sys, Kq, t, 0.0).holds;
        return d;
      },
      py::arg("scenario"), py::arg("gain"), py::arg("tau") = 1.0);

  m.def(
      "simulate",
      [](const py::object& o, const GainMatrix& K, const py::dict& profile, const std::array<double, 3>& s0,
         double T, double dt, std::uint64_t seed) {
        VisibilityScenario sc = as_scenario(o);
        LeaderProfile p = profile_from_json(from_py(profile));
        SimTrace tr;
        if (auto* b = std::get_if<BasicScenario>(&sc))
          tr = simulate_basic(*b, K, p, s0, T, dt);
        else if (auto* u = std::get_if<UbbScenario>(&sc))
          tr = simulate_ubb(*u, K, p, uniform_noise(u->H_F, u->H_L, seed), s0, T, dt);
        else
          tr = simulate_circle(std::get<CircleScenario>(sc), K, p, s0, T, dt);
        UncertainLinearSystem sys = build_system(sc);
        const Box<double>& S = sys.S;
        const Box<double>& U = sys.U;
        json j = to_json(monitor(tr, S, U));
        j["clamp_events"] = tr.clamp_events;
        j["samples"] = tr.size();
        j["reconstruction_error"] = reconstruction_error(tr);
        j["final_state"] = tr.state.back();
        return to_py(j);
      },
      py::arg("scenario"), py::arg("gain"), py::arg("profile"), py::arg("s0"), py::arg("T") = 60.0,
      py::arg("dt") = 1e-3, py::arg("seed") = 0);

  m.def("check_chain", [](const py::dict& spec) { return to_py(to_json(feasible_chain(chain_from_json(from_py(spec))))); });
  m.def("closed_chain_check",
        [](const py::dict& spec) { return to_py(to_json(closed_chain_check(chain_from_json(from_py(spec))))); });
  m.def("min_speed_schedule", [](const std::vector<std::array<double, 3>>& links, double V_1) {
    std::vector<LinkGeometry> g;
    for (const auto& l : links) g.push_back({l[0], l[1], l[2]});
    return min_speed_schedule(g, V_1);
  });
  m.def(
      "max_chain_length",
      [](double a, double b, double d, int n_max) {
        ChainLengthResult r = max_chain_length(ParameterMaps::constant(a, b, d), n_max);
        return py::make_tuple(r.N, r.reached_limit);
      },
      py::arg("a"), py::arg("b"), py::arg("d"), py::arg("n_max") = 200);
  m.def(
      "generate_schedule",
      [](double a, double d, std::size_t n, double V_1, double safety) {
        return to_py(chain_to_json(generate_schedule(a, d, n, V_1, safety)));
      },
      py::arg("a"), py::arg("d"), py::arg("n"), py::arg("V_1"), py::arg("safety") = 0.1);
}
