#include "vmp/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace vmp {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

constexpr double kProfileTol = 1e-12;

}  // namespace

Signal Signal::constant(double c) {
  Signal s;
  s.kind_ = Kind::Constant;
  s.c = c;
  return s;
}

Signal Signal::sine(double A, double w, double phi) {
  Signal s;
  s.kind_ = Kind::Sin;
  s.A = A;
  s.w = w;
  s.phi = phi;
  return s;
}

Signal Signal::cosine(double A, double w, double phi) {
  Signal s = sine(A, w, phi);
  s.kind_ = Kind::Cos;
  return s;
}

Signal Signal::uniform_hold(double r, double hold, std::uint64_t seed) {
  if (!(r >= 0)) throw InputError("uniform signal needs r >= 0");
  if (!(hold > 0)) throw InputError("uniform signal needs a positive hold time");
  Signal s;
  s.kind_ = Kind::UniformHold;
  s.r = r;
  s.hold = hold;
  s.seed = seed;
  return s;
}

Signal Signal::sum(Signal x, Signal y) {
  Signal s;
  s.kind_ = Kind::Sum;
  s.parts.push_back(std::move(x));
  s.parts.push_back(std::move(y));
  return s;
}

double Signal::operator()(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return c;
    case Kind::Sin:
      return A * std::sin(w * t + phi);
    case Kind::Cos:
      return A * std::cos(w * t + phi);
    case Kind::UniformHold: {
      auto bucket = static_cast<std::uint64_t>(std::max(0.0, std::floor(t / hold)));
      double u = unit_interval(splitmix64(seed ^ splitmix64(bucket)));
      return r * (2 * u - 1);
    }
    case Kind::Sum:
      return parts[0](t) + parts[1](t);
  }
  return 0.0;
}

double Signal::bound() const {
  switch (kind_) {
    case Kind::Constant:
      return std::abs(c);
    case Kind::Sin:
    case Kind::Cos:
      return std::abs(A);
    case Kind::UniformHold:
      return r;
    case Kind::Sum:
      return parts[0].bound() + parts[1].bound();
  }
  return 0.0;
}

std::string Signal::describe() const {
  std::ostringstream os;
  os.precision(10);
  switch (kind_) {
    case Kind::Constant:
      os << c;
      break;
    case Kind::Sin:
      os << A << "*sin(" << w << "*t+" << phi << ")";
      break;
    case Kind::Cos:
      os << A << "*cos(" << w << "*t+" << phi << ")";
      break;
    case Kind::UniformHold:
      os << "uniform(" << r << ", hold " << hold << ", seed " << seed << ")";
      break;
    case Kind::Sum:
      os << parts[0].describe() << " + " << parts[1].describe();
      break;
  }
  return os.str();
}

HSampler uniform_noise(double amp_F, double amp_L, std::uint64_t seed) {
  if (!(amp_F >= 0 && amp_L >= 0)) throw InputError("noise amplitudes must be nonnegative");
  const std::uint64_t base = splitmix64(seed);
  return [=](std::size_t step, double) {
    const auto k = static_cast<std::uint64_t>(step);
    double uF = unit_interval(splitmix64(base + 2 * k));
    double uL = unit_interval(splitmix64(base + 2 * k + 1));
    return std::array<double, 2>{amp_F * (2 * uF - 1), amp_L * (2 * uL - 1)};
  };
}

HSampler constant_noise(double h_F, double h_L) {
  return [=](std::size_t, double) { return std::array<double, 2>{h_F, h_L}; };
}

namespace {

struct LinkModel {
  std::array<double, 3> ref{};
  double rho = 0.0;
  GainMatrix K;
  std::array<double, 3> S{};  // half-widths
  std::array<double, 2> U{};  // half-widths
};

struct RobotInput {
  double v = 0.0;
  double omega = 0.0;
  double h = 0.0;
};

// Integrates every link's relative state (original coordinates) together
// with all world poses. Robot 0 follows the head profile.
class ChainEngine {
 public:
  ChainEngine(std::vector<LinkModel> links, const LeaderProfile& head, double V_head, double Omega_head,
              double rho_head)
      : links_(std::move(links)), head_(head), V_head_(V_head), Omega_head_(Omega_head), rho_head_(rho_head) {}

  void set_noise(HSampler h, double H_F, double H_L) {
    noise_ = std::move(h);
    H_F_ = H_F;
    H_L_ = H_L;
  }

  std::vector<SimTrace> run(const std::vector<std::array<double, 3>>& s0, double T, double dt,
                            const SimMetadata& meta_base);

 private:
  std::size_t L() const { return links_.size(); }
  std::size_t dim() const { return 3 * L() + 3 * (L() + 1); }

  // Fills dy and, if given, the realized robot inputs; returns whether any
  // input was clamped.
  bool deriv(double t, const std::vector<double>& y, const std::array<double, 2>& h, std::vector<double>& dy,
             std::vector<RobotInput>* inputs, std::vector<std::array<double, 2>>* controls) const;

  std::vector<LinkModel> links_;
  LeaderProfile head_;
  double V_head_;
  double Omega_head_;
  double rho_head_;
  HSampler noise_;
  double H_F_ = 0.0;
  double H_L_ = 0.0;
};

bool ChainEngine::deriv(double t, const std::vector<double>& y, const std::array<double, 2>& h,
                        std::vector<double>& dy, std::vector<RobotInput>* inputs,
                        std::vector<std::array<double, 2>>* controls) const {
  std::vector<RobotInput> in(L() + 1);
  double v_head = head_.v(t);
  double w_head = head_.omega(t);
  if (std::abs(v_head) > V_head_ + kProfileTol || std::abs(w_head) > Omega_head_ + kProfileTol) {
    std::ostringstream os;
    os << "leader profile leaves its bounds at t = " << t << " (v = " << v_head << ", omega = " << w_head << ")";
    throw InputError(os.str());
  }
  in[0] = {v_head, w_head + rho_head_, h[1]};
  bool clamped = false;
  for (std::size_t k = 0; k < L(); ++k) {
    const LinkModel& lm = links_[k];
    double s1 = y[3 * k] - lm.ref[0];
    double s2 = y[3 * k + 1] - lm.ref[1];
    double s3 = y[3 * k + 2] - lm.ref[2];
    double u1 = lm.K.k11 * s1;
    double u2 = lm.K.k22 * s2 + lm.K.k23 * s3;
    double c1 = std::clamp(u1, -lm.U[0], lm.U[0]);
    double c2 = std::clamp(u2, -lm.U[1], lm.U[1]);
    clamped = clamped || c1 != u1 || c2 != u2;
    if (controls) (*controls)[k] = {c1, c2};
    in[k + 1] = {c1, c2 + lm.rho, k == 0 ? h[0] : 0.0};
  }
  for (std::size_t k = 0; k < L(); ++k) {
    const RobotInput& Lr = in[k];
    const RobotInput& Fr = in[k + 1];
    double p1 = y[3 * k];
    double p2 = y[3 * k + 1];
    double beta = y[3 * k + 2];
    double cb = std::cos(beta);
    double sb = std::sin(beta);
    dy[3 * k] = Fr.omega * p2 + cb * (1 + Lr.v) - sb * Lr.h - (1 + Fr.v);
    dy[3 * k + 1] = -Fr.omega * p1 + sb * (1 + Lr.v) + cb * Lr.h - Fr.h;
    dy[3 * k + 2] = Lr.omega - Fr.omega;
  }
  const std::size_t off = 3 * L();
  for (std::size_t r = 0; r <= L(); ++r) {
    double th = y[off + 3 * r + 2];
    dy[off + 3 * r] = (1 + in[r].v) * std::cos(th) - in[r].h * std::sin(th);
    dy[off + 3 * r + 1] = (1 + in[r].v) * std::sin(th) + in[r].h * std::cos(th);
    dy[off + 3 * r + 2] = in[r].omega;
  }
  if (inputs) *inputs = std::move(in);
  return clamped;
}

std::size_t step_count(double T, double dt) {
  if (!(dt > 0)) throw InputError("dt must be positive");
  if (!(T >= dt)) throw InputError("horizon must be at least dt");
  double ratio = T / dt;
  double n = std::round(ratio);
  if (std::abs(n - ratio) > 1e-6) throw InputError("horizon must be a whole number of steps");
  return static_cast<std::size_t>(n);
}

std::vector<SimTrace> ChainEngine::run(const std::vector<std::array<double, 3>>& s0, double T, double dt,
                                       const SimMetadata& meta_base) {
  const std::size_t N = step_count(T, dt);
  if (s0.size() != L()) throw InputError("one initial state per link is required");
  const char* names[3] = {"dp1", "p2", "beta"};
  for (std::size_t k = 0; k < L(); ++k) {
    for (int i = 0; i < 3; ++i) {
      if (!(std::abs(s0[k][i]) <= links_[k].S[i])) {
        std::ostringstream os;
        os << "initial state outside S on link " << k + 1 << ": " << names[i] << " = " << s0[k][i]
           << " exceeds " << links_[k].S[i];
        throw InputError(os.str());
      }
    }
  }

  std::vector<double> y(dim(), 0.0);
  const std::size_t off = 3 * L();
  for (std::size_t k = 0; k < L(); ++k) {
    for (int i = 0; i < 3; ++i) y[3 * k + i] = s0[k][i] + links_[k].ref[i];
    // Place robot k+1 from robot k and the relative pose.
    double thL = y[off + 3 * k + 2];
    double thF = thL - y[3 * k + 2];
    double p1 = y[3 * k];
    double p2 = y[3 * k + 1];
    y[off + 3 * (k + 1)] = y[off + 3 * k] - (std::cos(thF) * p1 - std::sin(thF) * p2);
    y[off + 3 * (k + 1) + 1] = y[off + 3 * k + 1] - (std::sin(thF) * p1 + std::cos(thF) * p2);
    y[off + 3 * (k + 1) + 2] = thF;
  }

  std::vector<SimTrace> traces(L());
  for (std::size_t k = 0; k < L(); ++k) {
    SimTrace& tr = traces[k];
    tr.meta = meta_base;
    tr.meta.K = links_[k].K;
    tr.meta.dt = dt;
    tr.meta.rho = links_[k].rho;
    tr.reference = links_[k].ref;
    tr.t.reserve(N + 1);
    tr.state.reserve(N + 1);
    tr.input.reserve(N + 1);
    tr.leader.reserve(N + 1);
    tr.follower_pose.reserve(N + 1);
    tr.leader_pose.reserve(N + 1);
    if (noise_ && k == 0) tr.h.reserve(N + 1);
  }

  std::vector<double> k1(dim()), k2(dim()), k3(dim()), k4(dim()), tmp(dim());
  std::vector<RobotInput> realized;
  std::vector<std::array<double, 2>> controls(L());

  auto sample_h = [&](std::size_t step, double t) {
    if (!noise_) return std::array<double, 2>{0.0, 0.0};
    auto h = noise_(step, t);
    if (std::abs(h[0]) > H_F_ + kProfileTol || std::abs(h[1]) > H_L_ + kProfileTol) {
      std::ostringstream os;
      os << "lateral disturbance sample leaves its bounds at t = " << t;
      throw InputError(os.str());
    }
    return h;
  };

  auto record = [&](double t, const std::array<double, 2>& h) {
    for (std::size_t k = 0; k < L(); ++k) {
      SimTrace& tr = traces[k];
      const LinkModel& lm = links_[k];
      tr.t.push_back(t);
      tr.state.push_back({y[3 * k] - lm.ref[0], y[3 * k + 1] - lm.ref[1], y[3 * k + 2] - lm.ref[2]});
      tr.input.push_back(controls[k]);
      tr.leader.push_back({realized[k].v, realized[k].omega - (k == 0 ? rho_head_ : links_[k - 1].rho)});
      if (noise_ && k == 0) tr.h.push_back(h);
      tr.leader_pose.push_back({y[off + 3 * k], y[off + 3 * k + 1], y[off + 3 * k + 2]});
      tr.follower_pose.push_back({y[off + 3 * (k + 1)], y[off + 3 * (k + 1) + 1], y[off + 3 * (k + 1) + 2]});
    }
  };

  const std::size_t n = dim();
  for (std::size_t step = 0; step <= N; ++step) {
    const double t = static_cast<double>(step) * dt;
    const auto h = sample_h(step, t);
    bool clamped = deriv(t, y, h, k1, &realized, &controls);
    record(t, h);
    if (step == N) break;
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    clamped = deriv(t + 0.5 * dt, tmp, h, k2, nullptr, nullptr) || clamped;
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    clamped = deriv(t + 0.5 * dt, tmp, h, k3, nullptr, nullptr) || clamped;
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
    clamped = deriv(t + dt, tmp, h, k4, nullptr, nullptr) || clamped;
    for (std::size_t i = 0; i < n; ++i) y[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    if (clamped) {
      for (auto& tr : traces) ++tr.clamp_events;
    }
    for (std::size_t k = 0; k < L(); ++k) {
      if (std::abs(y[3 * k + 2]) > std::numbers::pi) {
        std::ostringstream os;
        os << "|beta| exceeded pi on link " << k + 1 << " at t = " << t + dt;
        throw SimulationError(os.str());
      }
    }
  }
  return traces;
}

LinkModel basic_link(const BasicScenario& sc, const GainMatrix& K) {
  LinkModel lm;
  lm.ref = {sc.d, 0.0, 0.0};
  lm.K = K;
  lm.S = {sc.a, sc.a, sc.b};
  lm.U = {sc.V_F, sc.Omega_F};
  return lm;
}

}  // namespace

SimTrace simulate_basic(const BasicScenario& sc, const GainMatrix& K, const LeaderProfile& profile,
                        const std::array<double, 3>& s0, double T, double dt) {
  sc.validate();
  ChainEngine eng({basic_link(sc, K)}, profile, sc.V_L, sc.Omega_L, 0.0);
  SimMetadata meta;
  meta.scenario = "basic";
  return std::move(eng.run({s0}, T, dt, meta).front());
}

SimTrace simulate_ubb(const UbbScenario& sc, const GainMatrix& K, const LeaderProfile& profile, const HSampler& h,
                      const std::array<double, 3>& s0, double T, double dt) {
  sc.validate();
  ChainEngine eng({basic_link(sc.basic, K)}, profile, sc.basic.V_L, sc.basic.Omega_L, 0.0);
  eng.set_noise(h ? h : constant_noise(0.0, 0.0), sc.H_F, sc.H_L);
  SimMetadata meta;
  meta.scenario = "ubb";
  return std::move(eng.run({s0}, T, dt, meta).front());
}

SimTrace simulate_circle(const CircleScenario& sc, const GainMatrix& K, const LeaderProfile& profile,
                         const std::array<double, 3>& s0, double T, double dt) {
  sc.validate();
  LinkModel lm;
  lm.ref = sc.reference();
  lm.rho = sc.rho;
  lm.K = K;
  lm.S = {sc.a, sc.a, sc.b};
  lm.U = {sc.V_F, sc.Omega_F};
  ChainEngine eng({lm}, profile, sc.V_L, sc.Omega_L, sc.rho);
  SimMetadata meta;
  meta.scenario = "circle";
  return std::move(eng.run({s0}, T, dt, meta).front());
}

std::vector<SimTrace> simulate_chain(const ChainSpec& spec, const std::vector<GainMatrix>& gains,
                                     const LeaderProfile& head, const std::vector<std::array<double, 3>>& s0,
                                     double T, double dt) {
  spec.validate();
  if (gains.size() != spec.links.size()) throw InputError("one gain per link is required");
  std::vector<LinkModel> links;
  for (std::size_t k = 0; k < spec.links.size(); ++k) links.push_back(basic_link(spec.pair(k), gains[k]));
  ChainEngine eng(std::move(links), head, spec.robots[0].V, spec.robots[0].Omega, 0.0);
  SimMetadata meta;
  meta.scenario = "chain";
  return eng.run(s0, T, dt, meta);
}

std::string SimTrace::to_csv() const {
  std::string out = "t,dp1,p2,beta,vF,wF,vL,wL,hF,hL,xF,yF,thF,xL,yL,thL\n";
  char buf[64];
  auto put = [&](double v, bool last = false) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out += buf;
    out += last ? '\n' : ',';
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    put(t[i]);
    for (double v : state[i]) put(v);
    for (double v : input[i]) put(v);
    for (double v : leader[i]) put(v);
    if (h.empty()) {
      out += ",,";
    } else {
      put(h[i][0]);
      put(h[i][1]);
    }
    for (double v : follower_pose[i]) put(v);
    put(leader_pose[i][0]);
    put(leader_pose[i][1]);
    put(leader_pose[i][2], true);
  }
  return out;
}

ViolationReport monitor(const SimTrace& trace, const Box<double>& S, const Box<double>& U, double tol) {
  if (S.dim() != 3 || U.dim() != 2) throw InputError("monitor expects a 3-d state box and a 2-d input box");
  static const char* state_names[3] = {"dp1", "p2", "beta"};
  static const char* input_names[2] = {"vF", "wF"};
  ViolationReport rep;
  std::array<double, 5> worst;
  worst.fill(-std::numeric_limits<double>::infinity());
  auto check = [&](double t, double v, double lo, double hi, std::size_t slot, const char* name,
                   std::vector<BoundViolation>& sink) {
    double excess = std::max(v - hi, lo - v);
    worst[slot] = std::max(worst[slot], excess);
    if (excess > tol) {
      sink.push_back({t, name, v, v > hi ? hi : lo});
      if (!rep.first_violation_time || t < *rep.first_violation_time) rep.first_violation_time = t;
    }
  };
  for (std::size_t i = 0; i < trace.size(); ++i) {
    for (std::size_t c = 0; c < 3; ++c)
      check(trace.t[i], trace.state[i][c], S.lo[c], S.hi[c], c, state_names[c], rep.state_violations);
    for (std::size_t c = 0; c < 2; ++c)
      check(trace.t[i], trace.input[i][c], U.lo[c], U.hi[c], 3 + c, input_names[c], rep.input_violations);
  }
  for (std::size_t c = 0; c < 3; ++c) rep.max_excess.emplace_back(state_names[c], worst[c]);
  for (std::size_t c = 0; c < 2; ++c) rep.max_excess.emplace_back(input_names[c], worst[3 + c]);
  return rep;
}

double reconstruction_error(const SimTrace& trace) {
  double worst = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& F = trace.follower_pose[i];
    const auto& L = trace.leader_pose[i];
    double dx = L[0] - F[0];
    double dy = L[1] - F[1];
    double c = std::cos(F[2]);
    double s = std::sin(F[2]);
    std::array<double, 3> rel{c * dx + s * dy, -s * dx + c * dy, L[2] - F[2]};
    for (int j = 0; j < 3; ++j) {
      worst = std::max(worst, std::abs(rel[j] - (trace.state[i][j] + trace.reference[j])));
    }
  }
  return worst;
}

double sup_state_difference(const SimTrace& coarse, const SimTrace& fine) {
  if (coarse.size() < 2 || fine.size() < 2) throw InputError("traces need at least two samples");
  double ratio = (fine.size() - 1.0) / (coarse.size() - 1.0);
  auto r = static_cast<std::size_t>(std::llround(ratio));
  if (r == 0 || (coarse.size() - 1) * r != fine.size() - 1) {
    throw InputError("fine trace grid must refine the coarse one");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i)
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(coarse.state[i][j] - fine.state[i * r][j]));
  return worst;
}

double min_distance(const SimTrace& trace) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    best = std::min(best, std::hypot(trace.leader_pose[i][0] - trace.follower_pose[i][0],
                                     trace.leader_pose[i][1] - trace.follower_pose[i][1]));
  }
  return best;
}

LinearSwitchingSimulator::LinearSwitchingSimulator(const UncertainLinearSystem& sys, const Matrix<double>& K,
                                                   SwitchingOptions opts)
    : sys_(sys), opts_(opts) {
  sys_.validate();
  if (!(opts_.dt > 0 && opts_.dwell >= opts_.dt && opts_.T >= opts_.dt)) {
    throw InputError("switching simulation needs 0 < dt <= dwell and dt <= T");
  }
  n_ = sys_.n();
  const auto qv = sys_.Q.vertices();
  const auto dv = sys_.D.vertices();
  nq_ = qv.size();
  nd_ = dv.size();
  const double h = opts_.dt;
  const Matrix<double> I = Matrix<double>::identity(n_);
  for (const auto& q : qv) {
    auto mats = eval_matrices<double>(sys_, q);
    Matrix<double> F = mats.A + mats.B * K;
    Matrix<double> F2 = F * F;
    Matrix<double> F3 = F2 * F;
    Matrix<double> F4 = F3 * F;
    // RK4 on an affine LTI system is the degree-4 Taylor polynomial.
    Matrix<double> M = I + F * h + F2 * (h * h / 2) + F3 * (h * h * h / 6) + F4 * (h * h * h * h / 24);
    Matrix<double> P = I * h + F * (h * h / 2) + F2 * (h * h * h / 6) + F3 * (h * h * h * h / 24);
    for (const auto& r : dv) {
      std::vector<double> c = mats.E * std::span<const double>(r);
      std::vector<double> m = P * std::span<const double>(c);
      Mode mode;
      mode.M.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) mode.M[i * n_ + j] = M(i, j);
      mode.m = std::move(m);
      modes_.push_back(std::move(mode));
    }
  }
}

SwitchingResult LinearSwitchingSimulator::run(const std::vector<double>& x0, std::uint64_t seed) const {
  if (x0.size() != n_) throw InputError("initial state has the wrong dimension");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, modes_.size() - 1);
  const auto N = static_cast<std::size_t>(std::llround(opts_.T / opts_.dt));
  const auto per_dwell = static_cast<std::size_t>(std::max<long long>(1, std::llround(opts_.dwell / opts_.dt)));
  SwitchingResult res;
  res.max_excess = -std::numeric_limits<double>::infinity();
  std::vector<double> x = x0;
  std::vector<double> nx(n_);
  const Mode* mode = nullptr;
  auto excess_of = [&](const std::vector<double>& v) {
    double e = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i) e = std::max({e, v[i] - sys_.S.hi[i], sys_.S.lo[i] - v[i]});
    return e;
  };
  res.max_excess = excess_of(x);
  for (std::size_t step = 0; step < N; ++step) {
    if (step % per_dwell == 0) mode = &modes_[pick(rng)];
    for (std::size_t i = 0; i < n_; ++i) {
      double acc = mode->m[i];
      for (std::size_t j = 0; j < n_; ++j) acc += mode->M[i * n_ + j] * x[j];
      nx[i] = acc;
    }
    x.swap(nx);
    double e = excess_of(x);
    if (e > res.max_excess) res.max_excess = e;
    if (e > opts_.tol && res.stayed) {
      res.stayed = false;
      res.first_exit_time = static_cast<double>(step + 1) * opts_.dt;
    }
  }
  return res;
}

}  // namespace vmp
