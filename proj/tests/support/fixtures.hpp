#pragma once

#include <numbers>

#include "vmp/chain.hpp"
#include "vmp/scenarios.hpp"
#include "vmp/simulation.hpp"

namespace fixtures {

inline constexpr double pi = std::numbers::pi;

inline vmp::BasicScenario basic() { return {0.4, pi / 4, 2.0, 0.9, 0.1, pi / 3, pi / 15}; }

inline vmp::UbbScenario ubb() { return {{0.4, pi / 4, 2.0, 0.95, 0.03, pi / 4, pi / 18}, 0.12, 0.12}; }

inline vmp::CircleScenario circle() { return {0.4, pi / 4, pi / 6, 0.3, 0.8, 0.06, pi / 3, pi / 25}; }

inline vmp::ChainSpec chain() {
  vmp::ChainSpec s;
  s.links = {{0.4, pi / 14, 3.0}, {0.4, pi / 9, 3.0}, {0.4, pi / 4, 3.0}};
  s.robots = {{0.02, pi / 50}, {0.085, pi / 35}, {0.25, pi / 21}, {0.8, pi / 6}};
  return s;
}

inline vmp::GainMatrix basic_gain() { return {1.5173, 0.3707, 0.4925}; }
inline vmp::GainMatrix ubb_gain() { return {1.6735, 0.5896, 0.5326}; }
inline vmp::GainMatrix circle_gain() { return {1.3812, 0.6051, 0.5508}; }

inline std::vector<vmp::GainMatrix> chain_gains() {
  return {{0.2066, 0.0315, 0.3361}, {0.5087, 0.0669, 0.3400}, {1.7273, 0.2678, 0.3348}};
}

inline std::vector<std::array<double, 3>> chain_s0() { return {{0, 0, 0.0374}, {0, 0, 0.2244}, {0, 0, 0.2618}}; }

inline vmp::LeaderProfile chain_profile() { return {vmp::Signal::constant(0.01), vmp::Signal::constant(pi / 52)}; }

inline vmp::LeaderProfile basic_profile() {
  return {vmp::Signal::sine(0.05, 1.0), vmp::Signal::cosine(pi / 20, 0.1)};
}

inline vmp::LeaderProfile ubb_profile() {
  return {vmp::Signal::constant(0.01), vmp::Signal::sine(-pi / 20, 0.08)};
}

inline vmp::LeaderProfile circle_profile() {
  return {vmp::Signal::sine(0.05, 1.0), vmp::Signal::constant(pi / 30)};
}

}  // namespace fixtures
