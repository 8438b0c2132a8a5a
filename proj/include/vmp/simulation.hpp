#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vmp/chain.hpp"
#include "vmp/errors.hpp"
#include "vmp/scenarios.hpp"
#include "vmp/uncertain_systems.hpp"

namespace vmp {

// Raised when a run leaves the region the model is meant for (|beta| > pi).
class SimulationError : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

std::uint64_t splitmix64(std::uint64_t x);

// Scalar time signal. Sum nodes own their two children.
class Signal {
 public:
  enum class Kind { Constant, Sin, Cos, UniformHold, Sum };

  static Signal constant(double c);
  static Signal sine(double A, double w, double phi = 0.0);
  static Signal cosine(double A, double w, double phi = 0.0);
  // Uniform in [-r, r], redrawn every hold seconds from (seed, bucket).
  static Signal uniform_hold(double r, double hold, std::uint64_t seed);
  static Signal sum(Signal x, Signal y);

  double operator()(double t) const;
  // Upper bound on |s(t)| over all t.
  double bound() const;
  Kind kind() const { return kind_; }
  std::string describe() const;

  double c = 0.0;
  double A = 0.0;
  double w = 0.0;
  double phi = 0.0;
  double r = 0.0;
  double hold = 0.0;
  std::uint64_t seed = 0;
  std::vector<Signal> parts;

 private:
  Kind kind_ = Kind::Constant;
};

// For circle scenarios omega is the offset from rho.
struct LeaderProfile {
  Signal v = Signal::constant(0.0);
  Signal omega = Signal::constant(0.0);
};

// Lateral disturbances (h_F, h_L) for integration step k starting at t.
using HSampler = std::function<std::array<double, 2>(std::size_t step, double t)>;

HSampler uniform_noise(double amp_F, double amp_L, std::uint64_t seed);
HSampler constant_noise(double h_F, double h_L);

struct SimMetadata {
  std::string scenario;
  GainMatrix K;
  double dt = 0.0;
  double rho = 0.0;
  std::string integrator = "rk4";
};

// One leader/follower link. States are in shifted coordinates; inputs are
// the controlled components (for circle runs the second one is the offset
// from rho, as is leader[1]).
struct SimTrace {
  std::vector<double> t;
  std::vector<std::array<double, 3>> state;
  std::vector<std::array<double, 2>> input;
  std::vector<std::array<double, 2>> leader;
  std::vector<std::array<double, 2>> h;  // empty without lateral disturbances
  std::vector<std::array<double, 3>> follower_pose;
  std::vector<std::array<double, 3>> leader_pose;
  std::array<double, 3> reference{};  // equilibrium offsets in original coordinates
  std::size_t clamp_events = 0;
  SimMetadata meta;

  std::size_t size() const { return t.size(); }
  std::string to_csv() const;
};

SimTrace simulate_basic(const BasicScenario& sc, const GainMatrix& K, const LeaderProfile& profile,
                        const std::array<double, 3>& s0, double T, double dt);
SimTrace simulate_ubb(const UbbScenario& sc, const GainMatrix& K, const LeaderProfile& profile,
                      const HSampler& h, const std::array<double, 3>& s0, double T, double dt);
SimTrace simulate_circle(const CircleScenario& sc, const GainMatrix& K, const LeaderProfile& profile,
                         const std::array<double, 3>& s0, double T, double dt);
// gains[k] and s0[k] belong to link k (robot k+2 following robot k+1).
std::vector<SimTrace> simulate_chain(const ChainSpec& spec, const std::vector<GainMatrix>& gains,
                                     const LeaderProfile& head, const std::vector<std::array<double, 3>>& s0,
                                     double T, double dt);

struct BoundViolation {
  double time = 0.0;
  std::string component;
  double value = 0.0;
  double bound = 0.0;
};

struct ViolationReport {
  std::vector<BoundViolation> state_violations;
  std::vector<BoundViolation> input_violations;
  std::vector<std::pair<std::string, double>> max_excess;  // per component, <= 0 when inside
  std::optional<double> first_violation_time;

  bool clean() const { return state_violations.empty() && input_violations.empty(); }
};

inline constexpr double kMonitorTol = 1e-9;

ViolationReport monitor(const SimTrace& trace, const Box<double>& S, const Box<double>& U,
                        double tol = kMonitorTol);

// Sup-norm gap between the integrated relative state and the one recomputed
// from the two world poses.
double reconstruction_error(const SimTrace& trace);

// Sup-norm state difference on the grid of the coarser trace; the finer
// step must divide the coarser one.
double sup_state_difference(const SimTrace& coarse, const SimTrace& fine);

double min_distance(const SimTrace& trace);

struct SwitchingOptions {
  double dwell = 0.1;
  double T = 30.0;
  double dt = 1e-3;
  double tol = 1e-6;
};

struct SwitchingResult {
  bool stayed = true;
  double max_excess = 0.0;  // largest bound excess seen, <= 0 when inside
  double first_exit_time = -1.0;
};

// Linear closed loop x' = F(q) x + E(q) delta with (q, delta) redrawn from
// the box vertices every dwell seconds.
class LinearSwitchingSimulator {
 public:
  LinearSwitchingSimulator(const UncertainLinearSystem& sys, const Matrix<double>& K, SwitchingOptions opts = {});
  SwitchingResult run(const std::vector<double>& x0, std::uint64_t seed) const;

 private:
  struct Mode {
    std::vector<double> M;  // n x n step map
    std::vector<double> m;  // affine part
  };
  UncertainLinearSystem sys_;
  SwitchingOptions opts_;
  std::size_t n_ = 0;
  std::size_t nq_ = 0;
  std::size_t nd_ = 0;
  std::vector<Mode> modes_;  // indexed by q vertex * nd + d vertex
};

}  // namespace vmp
