#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vmp/rational.hpp"

namespace vmp {

// One row g.x <= rhs.
struct Inequality {
  std::vector<Rational> coeffs;
  Rational rhs;

  bool is_constant() const;
};

class LinearInequalitySystem {
 public:
  LinearInequalitySystem() = default;
  explicit LinearInequalitySystem(std::size_t num_vars) : num_vars_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const std::vector<Inequality>& rows() const { return rows_; }
  const Inequality& row(std::size_t i) const { return rows_.at(i); }

  void add_row(std::vector<Rational> coeffs, Rational rhs);
  void add_row(Inequality row);

  bool operator==(const LinearInequalitySystem& o) const;

 private:
  std::size_t num_vars_ = 0;
  std::vector<Inequality> rows_;
};

// Drop exact duplicates and, among rows with proportional coefficient
// vectors, keep only the tightest. Order of first appearance is kept.
LinearInequalitySystem deduplicate(const LinearInequalitySystem& sys);

LinearInequalitySystem eliminate(const LinearInequalitySystem& sys, std::size_t var);

// Eliminates every variable not in keep, in ascending index order. The
// surviving variables keep their relative order.
LinearInequalitySystem project(const LinearInequalitySystem& sys, std::span<const std::size_t> keep);

bool is_feasible(const LinearInequalitySystem& sys);

// True iff every point of sys satisfies row (sys assumed feasible or not).
bool implies(const LinearInequalitySystem& sys, const Inequality& row);

// Removes implied rows one at a time in index order. An infeasible system
// reduces to the single row 0 <= -1.
LinearInequalitySystem reduce(const LinearInequalitySystem& sys);

// Same solution set (mutual implication of all rows).
bool equivalent(const LinearInequalitySystem& a, const LinearInequalitySystem& b);

bool satisfies(const LinearInequalitySystem& sys, std::span<const Rational> point);
bool satisfies(const LinearInequalitySystem& sys, std::span<const double> point, double tol);

// Per-row rhs - g.x evaluated in floating point.
std::vector<double> slacks(const LinearInequalitySystem& sys, std::span<const double> point);

// Text format: one row per line, "c1 c2 ... cn <= r". Lines starting with
// '#' are comments; "# vars: n" declares the width of an empty system.
std::string dump(const LinearInequalitySystem& sys);
LinearInequalitySystem parse_system(const std::string& text);

std::string format_row(const Inequality& row);

}  // namespace vmp
