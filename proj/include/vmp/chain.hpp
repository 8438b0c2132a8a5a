#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vmp/errors.hpp"
#include "vmp/scenarios.hpp"

namespace vmp {

// Geometry of the visibility set robot k keeps on robot k-1.
struct LinkGeometry {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;
};

struct RobotLimits {
  double V = 0.0;
  double Omega = 0.0;
};

struct ScheduleProvenance {
  double a = 0.0;
  double d = 0.0;
  double V_1 = 0.0;
  double safety = 0.0;
  std::string rule;
};

// robots[0] is robot 1 (the head); links[k] joins robots[k] and robots[k+1].
struct ChainSpec {
  std::vector<LinkGeometry> links;
  std::vector<RobotLimits> robots;
  std::optional<ScheduleProvenance> provenance;

  std::size_t n() const { return robots.size(); }
  void validate() const;
  // Scenario for follower robots[k+1] tracking leader robots[k].
  BasicScenario pair(std::size_t k) const;
};

struct ParameterMaps {
  // Indexed by robot number i >= 2.
  std::function<double(int)> f_a;
  std::function<double(int)> f_b;
  std::function<double(int)> f_d;

  static ParameterMaps constant(double a, double b, double d);
};

FeasibilityReport feasible_chain(const ChainSpec& spec);

class ChainSaturationError : public InfeasibleError {
 public:
  ChainSaturationError(const std::string& what, std::size_t robot) : InfeasibleError(what), robot_(robot) {}
  // 1-based robot index whose minimum speed reaches 1.
  std::size_t robot() const { return robot_; }

 private:
  std::size_t robot_;
};

// V_{k+1} = V_k (1 + a sin b/(d - a)) + 1 - cos b + a b/(d - a), one entry
// per link; returns V_1..V_n.
std::vector<double> min_speed_schedule(const std::vector<LinkGeometry>& links, double V_1);

struct ChainLengthResult {
  int N = 0;
  bool reached_limit = false;  // the sum stayed below 1 up to n_max
};

ChainLengthResult max_chain_length(const ParameterMaps& maps, int n_max);

struct ClosedChainReport {
  FeasibilityReport report;      // open-chain rows plus the wrap row
  bool infeasible = true;
  double chain_upper_bound_V1 = 0.0;  // implied by the open-chain speed rows
  double wrap_lower_bound_V1 = 0.0;   // from robot 1 following robot n
  std::string witness;
};

ClosedChainReport closed_chain_check(const ChainSpec& spec, std::optional<LinkGeometry> wrap = std::nullopt);

class ScheduleError : public InfeasibleError {
 public:
  ScheduleError(const std::string& what, std::size_t failing_robot, std::size_t achievable)
      : InfeasibleError(what), failing_robot_(failing_robot), achievable_(achievable) {}
  std::size_t failing_robot() const { return failing_robot_; }
  std::size_t achievable() const { return achievable_; }

 private:
  std::size_t failing_robot_;
  std::size_t achievable_;
};

ChainSpec generate_schedule(double a, double d, std::size_t n, double V_1, double safety = 0.1);

}  // namespace vmp
