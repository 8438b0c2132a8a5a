#include "vmp/json_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace vmp {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

namespace {

double plain_number(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("not a number: \"" + whole + "\"");
  }
  if (used != s.size()) throw InputError("not a number: \"" + whole + "\"");
  return v;
}

const json& require(const json& obj, const std::string& key) {
  if (!obj.is_object()) throw InputError("expected a JSON object while reading \"" + key + "\"");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError("missing field \"" + key + "\"");
  return *it;
}

double value_of(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_number_text(v.get<std::string>());
  throw InputError("field \"" + key + "\" must be a number");
}

}  // namespace

double parse_number_text(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty number");
  auto pos = s.find("pi");
  if (pos == std::string::npos) return plain_number(s, text);
  std::string head = s.substr(0, pos);
  std::string tail = s.substr(pos + 2);
  double factor = 1.0;
  if (head == "-") {
    factor = -1.0;
  } else if (!head.empty()) {
    if (head.back() != '*') throw InputError("cannot parse \"" + text + "\"");
    factor = plain_number(head.substr(0, head.size() - 1), text);
  }
  double v = factor * std::numbers::pi;
  if (!tail.empty()) {
    if (tail.front() != '/') throw InputError("cannot parse \"" + text + "\"");
    double den = plain_number(tail.substr(1), text);
    if (den == 0) throw InputError("division by zero in \"" + text + "\"");
    v /= den;
  }
  return v;
}

double number_field(const json& obj, const std::string& key) { return value_of(require(obj, key), key); }

VisibilityScenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw InputError("scenario must be a JSON object");
  const json& t = require(j, "type");
  if (!t.is_string()) throw InputError("scenario type must be a string");
  const std::string type = t.get<std::string>();
  if (type == "basic" || type == "ubb") {
    BasicScenario b{number_field(j, "a"),   number_field(j, "b"),       number_field(j, "d"),
                    number_field(j, "V_F"), number_field(j, "V_L"),     number_field(j, "Omega_F"),
                    number_field(j, "Omega_L")};
    if (type == "basic") {
      b.validate();
      return b;
    }
    UbbScenario u{b, number_field(j, "H_F"), number_field(j, "H_L")};
    u.validate();
    return u;
  }
  if (type == "circle") {
    CircleScenario c{number_field(j, "a"),   number_field(j, "b"),   number_field(j, "gamma"),
                     number_field(j, "rho"), number_field(j, "V_F"), number_field(j, "V_L"),
                     number_field(j, "Omega_F"), number_field(j, "Omega_L")};
    c.validate();
    return c;
  }
  throw InputError("unknown scenario type \"" + type + "\"");
}

json scenario_to_json(const VisibilityScenario& sc) {
  json j;
  j["type"] = scenario_type(sc);
  auto put_basic = [&](const BasicScenario& b) {
    j["a"] = b.a;
    j["b"] = b.b;
    j["d"] = b.d;
    j["V_F"] = b.V_F;
    j["V_L"] = b.V_L;
    j["Omega_F"] = b.Omega_F;
    j["Omega_L"] = b.Omega_L;
  };
  if (const auto* b = std::get_if<BasicScenario>(&sc)) {
    put_basic(*b);
  } else if (const auto* u = std::get_if<UbbScenario>(&sc)) {
    put_basic(u->basic);
    j["H_F"] = u->H_F;
    j["H_L"] = u->H_L;
  } else {
    const auto& c = std::get<CircleScenario>(sc);
    j["a"] = c.a;
    j["b"] = c.b;
    j["gamma"] = c.gamma;
    j["rho"] = c.rho;
    j["V_F"] = c.V_F;
    j["V_L"] = c.V_L;
    j["Omega_F"] = c.Omega_F;
    j["Omega_L"] = c.Omega_L;
  }
  return j;
}

bool is_chain_json(const json& j) { return j.is_object() && j.contains("links"); }

ChainSpec chain_from_json(const json& j) {
  if (!j.is_object()) throw InputError("chain spec must be a JSON object");
  const json& links = require(j, "links");
  const json& robots = require(j, "robots");
  if (!links.is_array() || !robots.is_array()) throw InputError("links and robots must be arrays");
  ChainSpec spec;
  for (const auto& l : links) spec.links.push_back({number_field(l, "a"), number_field(l, "b"), number_field(l, "d")});
  for (const auto& r : robots) spec.robots.push_back({number_field(r, "V"), number_field(r, "Omega")});
  if (j.contains("n")) {
    const json& n = j["n"];
    if (!n.is_number_integer() || n.get<long long>() != static_cast<long long>(spec.robots.size())) {
      throw InputError("n does not match the number of robots");
    }
  }
  if (j.contains("provenance")) {
    const json& p = j["provenance"];
    spec.provenance = ScheduleProvenance{number_field(p, "a"), number_field(p, "d"), number_field(p, "V_1"),
                                         number_field(p, "safety"), p.value("rule", std::string())};
  }
  spec.validate();
  return spec;
}

json chain_to_json(const ChainSpec& spec) {
  json j;
  j["n"] = spec.n();
  j["links"] = json::array();
  for (const auto& l : spec.links) j["links"].push_back({{"a", l.a}, {"b", l.b}, {"d", l.d}});
  j["robots"] = json::array();
  for (const auto& r : spec.robots) j["robots"].push_back({{"V", r.V}, {"Omega", r.Omega}});
  if (spec.provenance) {
    const auto& p = *spec.provenance;
    j["provenance"] = {{"a", p.a}, {"d", p.d}, {"V_1", p.V_1}, {"safety", p.safety}, {"rule", p.rule}};
  }
  return j;
}

GainMatrix gain_from_json(const json& j) {
  if (j.is_object()) return {number_field(j, "k11"), number_field(j, "k22"), number_field(j, "k23")};
  if (j.is_array() && j.size() == 3 && !j[0].is_array()) {
    return {value_of(j[0], "k11"), value_of(j[1], "k22"), value_of(j[2], "k23")};
  }
  if (j.is_array() && j.size() == 2 && j[0].is_array() && j[1].is_array() && j[0].size() == 3 && j[1].size() == 3) {
    for (auto [r, c] : {std::pair{0, 1}, {0, 2}, {1, 0}}) {
      if (value_of(j[r][c], "K") != 0) throw InputError("gain must have the sparse form [[k11,0,0],[0,k22,k23]]");
    }
    return {value_of(j[0][0], "k11"), value_of(j[1][1], "k22"), value_of(j[1][2], "k23")};
  }
  throw InputError("unrecognized gain format");
}

json gain_to_json(const GainMatrix& K) { return {{"k11", K.k11}, {"k22", K.k22}, {"k23", K.k23}}; }

Signal signal_from_json(const json& j) {
  if (j.is_number() || j.is_string()) return Signal::constant(value_of(j, "signal"));
  const std::string type = require(j, "type").get<std::string>();
  auto opt = [&](const char* key, double def) { return j.contains(key) ? number_field(j, key) : def; };
  if (type == "constant") return Signal::constant(number_field(j, "c"));
  if (type == "sin") return Signal::sine(number_field(j, "A"), number_field(j, "omega"), opt("phi", 0.0));
  if (type == "cos") return Signal::cosine(number_field(j, "A"), number_field(j, "omega"), opt("phi", 0.0));
  if (type == "uniform") {
    return Signal::uniform_hold(number_field(j, "r"), number_field(j, "hold"),
                                j.value("seed", static_cast<std::uint64_t>(0)));
  }
  if (type == "sum") {
    const json& terms = require(j, "terms");
    if (!terms.is_array() || terms.size() != 2) throw InputError("sum signals take exactly two terms");
    return Signal::sum(signal_from_json(terms[0]), signal_from_json(terms[1]));
  }
  throw InputError("unknown signal type \"" + type + "\"");
}

json signal_to_json(const Signal& s) {
  switch (s.kind()) {
    case Signal::Kind::Constant:
      return {{"type", "constant"}, {"c", s.c}};
    case Signal::Kind::Sin:
      return {{"type", "sin"}, {"A", s.A}, {"omega", s.w}, {"phi", s.phi}};
    case Signal::Kind::Cos:
      return {{"type", "cos"}, {"A", s.A}, {"omega", s.w}, {"phi", s.phi}};
    case Signal::Kind::UniformHold:
      return {{"type", "uniform"}, {"r", s.r}, {"hold", s.hold}, {"seed", s.seed}};
    case Signal::Kind::Sum:
      return {{"type", "sum"}, {"terms", {signal_to_json(s.parts[0]), signal_to_json(s.parts[1])}}};
  }
  return {};
}

LeaderProfile profile_from_json(const json& j) {
  LeaderProfile p;
  p.v = signal_from_json(require(j, "v"));
  p.omega = signal_from_json(require(j, "omega"));
  return p;
}

json profile_to_json(const LeaderProfile& p) { return {{"v", signal_to_json(p.v)}, {"omega", signal_to_json(p.omega)}}; }

json to_json(const FeasibilityReport& rep) {
  json j;
  j["feasible"] = rep.feasible;
  j["conditions"] = json::array();
  for (const auto& c : rep.conditions) {
    j["conditions"].push_back({{"id", c.id}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"slack", c.slack}});
  }
  if (const Condition* f = rep.first_failure()) j["first_failure"] = f->id;
  return j;
}

json to_json(const CertificateReport& rep) {
  json j;
  j["check"] = rep.check;
  j["holds"] = rep.holds;
  j["violation_count"] = rep.violations.size();
  j["violations"] = json::array();
  for (std::size_t i = 0; i < rep.violations.size() && i < 20; ++i) {
    const auto& v = rep.violations[i];
    j["violations"].push_back({{"vertex", v.vertex},
                               {"param_vertex", v.param_vertex},
                               {"disturbance_vertex", v.disturbance_vertex},
                               {"row", v.row},
                               {"slack", v.slack}});
  }
  return j;
}

json to_json(const SynthesisResult& res) {
  json j;
  j["gain"] = gain_to_json(res.gain);
  j["exact"] = json::array();
  for (const auto& e : res.exact) j["exact"].push_back(to_string(e));
  j["norm"] = res.norm;
  j["active_rows"] = res.active_rows;
  j["kkt_residual"] = res.kkt_residual;
  return j;
}

json to_json(const ClosedChainReport& rep) {
  json j = to_json(rep.report);
  j["infeasible"] = rep.infeasible;
  j["chain_upper_bound_V1"] = rep.chain_upper_bound_V1;
  j["wrap_lower_bound_V1"] = rep.wrap_lower_bound_V1;
  j["witness"] = rep.witness;
  return j;
}

json to_json(const ViolationReport& rep, std::size_t max_entries) {
  auto list = [&](const std::vector<BoundViolation>& v) {
    json arr = json::array();
    for (std::size_t i = 0; i < v.size() && i < max_entries; ++i) {
      arr.push_back({{"time", v[i].time}, {"component", v[i].component}, {"value", v[i].value}, {"bound", v[i].bound}});
    }
    return arr;
  };
  json j;
  j["clean"] = rep.clean();
  j["state_violation_count"] = rep.state_violations.size();
  j["input_violation_count"] = rep.input_violations.size();
  j["state_violations"] = list(rep.state_violations);
  j["input_violations"] = list(rep.input_violations);
  j["max_excess"] = json::object();
  for (const auto& [name, e] : rep.max_excess) j["max_excess"][name] = e;
  j["first_violation_time"] = rep.first_violation_time ? json(*rep.first_violation_time) : json(nullptr);
  return j;
}

json to_json(const Rationalizer& rz) {
  json j = json::array();
  for (const auto& c : rz.log()) j.push_back({{"name", c.name}, {"value", c.value}, {"rational", to_string(c.approx)}});
  return j;
}

}  // namespace vmp
