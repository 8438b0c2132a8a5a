#include "vmp/linear_inequalities.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "vmp/errors.hpp"

namespace vmp {

bool Inequality::is_constant() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

void LinearInequalitySystem::add_row(std::vector<Rational> coeffs, Rational rhs) {
  if (coeffs.size() != num_vars_) {
    throw InputError("row has " + std::to_string(coeffs.size()) + " coefficients, system has " +
                     std::to_string(num_vars_) + " variables");
  }
  rows_.push_back(Inequality{std::move(coeffs), std::move(rhs)});
}

void LinearInequalitySystem::add_row(Inequality row) { add_row(std::move(row.coeffs), std::move(row.rhs)); }

bool LinearInequalitySystem::operator==(const LinearInequalitySystem& o) const {
  if (num_vars_ != o.num_vars_ || rows_.size() != o.rows_.size()) return false;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].coeffs != o.rows_[i].coeffs || rows_[i].rhs != o.rows_[i].rhs) return false;
  }
  return true;
}

namespace {

// Integer direction with gcd 1 plus the rhs expressed on that scale.
struct NormalizedRow {
  std::vector<mpz_class> direction;
  Rational scaled_rhs;
};

NormalizedRow normalize(const Inequality& row) {
  mpz_class lcm_den = 1;
  for (const auto& c : row.coeffs) {
    if (c != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  }
  NormalizedRow out;
  out.direction.reserve(row.coeffs.size());
  mpz_class g = 0;
  for (const auto& c : row.coeffs) {
    mpz_class v = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.direction.push_back(std::move(v));
  }
  if (g == 0) {
    out.scaled_rhs = row.rhs;
    return out;
  }
  for (auto& v : out.direction) v /= g;
  out.scaled_rhs = row.rhs * Rational(lcm_den, g);
  return out;
}

Inequality drop_column(const Inequality& row, std::size_t var) {
  Inequality out;
  out.coeffs.reserve(row.coeffs.size() - 1);
  for (std::size_t j = 0; j < row.coeffs.size(); ++j)
    if (j != var) out.coeffs.push_back(row.coeffs[j]);
  out.rhs = row.rhs;
  return out;
}

bool has_negative_constant(const LinearInequalitySystem& sys) {
  return std::any_of(sys.rows().begin(), sys.rows().end(),
                     [](const Inequality& r) { return r.is_constant() && r.rhs < 0; });
}

}  // namespace

LinearInequalitySystem deduplicate(const LinearInequalitySystem& sys) {
  std::map<std::vector<mpz_class>, std::size_t> seen;
  std::vector<Inequality> kept;
  std::vector<Rational> kept_scaled;
  for (const auto& row : sys.rows()) {
    NormalizedRow n = normalize(row);
    auto it = seen.find(n.direction);
    if (it == seen.end()) {
      seen.emplace(std::move(n.direction), kept.size());
      kept.push_back(row);
      kept_scaled.push_back(std::move(n.scaled_rhs));
    } else if (n.scaled_rhs < kept_scaled[it->second]) {
      kept[it->second] = row;
      kept_scaled[it->second] = std::move(n.scaled_rhs);
    }
  }
  LinearInequalitySystem out(sys.num_vars());
  for (auto& row : kept) out.add_row(std::move(row));
  return out;
}

LinearInequalitySystem eliminate(const LinearInequalitySystem& sys, std::size_t var) {
  if (var >= sys.num_vars()) throw InputError("eliminate: variable index out of range");
  LinearInequalitySystem out(sys.num_vars() - 1);
  std::vector<const Inequality*> pos;
  std::vector<const Inequality*> neg;
  for (const auto& row : sys.rows()) {
    const Rational& c = row.coeffs[var];
    if (c > 0) {
      pos.push_back(&row);
    } else if (c < 0) {
      neg.push_back(&row);
    } else {
      out.add_row(drop_column(row, var));
    }
  }
  for (const Inequality* p : pos) {
    Rational sp = 1 / p->coeffs[var];
    for (const Inequality* n : neg) {
      Rational sn = -1 / n->coeffs[var];
      Inequality combined;
      combined.coeffs.reserve(sys.num_vars() - 1);
      for (std::size_t j = 0; j < sys.num_vars(); ++j) {
        if (j == var) continue;
        combined.coeffs.push_back(p->coeffs[j] * sp + n->coeffs[j] * sn);
      }
      combined.rhs = p->rhs * sp + n->rhs * sn;
      out.add_row(std::move(combined));
    }
  }
  return deduplicate(out);
}

LinearInequalitySystem project(const LinearInequalitySystem& sys, std::span<const std::size_t> keep) {
  std::vector<bool> kept(sys.num_vars(), false);
  for (std::size_t k : keep) {
    if (k >= sys.num_vars()) throw InputError("project: variable index out of range");
    kept[k] = true;
  }
  LinearInequalitySystem cur = sys;
  std::size_t removed = 0;
  for (std::size_t v = 0; v < sys.num_vars(); ++v) {
    if (kept[v]) continue;
    cur = eliminate(cur, v - removed);
    ++removed;
  }
  return cur;
}

bool is_feasible(const LinearInequalitySystem& sys) {
  LinearInequalitySystem cur = sys;
  while (true) {
    if (has_negative_constant(cur)) return false;
    if (cur.num_vars() == 0) return true;
    cur = eliminate(cur, 0);
  }
}

bool implies(const LinearInequalitySystem& sys, const Inequality& row) {
  if (row.coeffs.size() != sys.num_vars()) throw InputError("implies: dimension mismatch");
  const std::size_t n = sys.num_vars();
  // Slack t measures how far g.x can exceed c: {sys, g.x - c >= t, t >= 0}.
  LinearInequalitySystem lifted(n + 1);
  for (const auto& r : sys.rows()) {
    auto c = r.coeffs;
    c.emplace_back(0);
    lifted.add_row(std::move(c), r.rhs);
  }
  std::vector<Rational> g;
  for (const auto& c : row.coeffs) g.push_back(-c);
  g.emplace_back(1);
  lifted.add_row(std::move(g), -row.rhs);
  std::vector<Rational> nonneg(n + 1, Rational(0));
  nonneg[n] = -1;
  lifted.add_row(std::move(nonneg), Rational(0));

  const std::size_t keep[] = {n};
  LinearInequalitySystem t_only = project(lifted, keep);
  for (const auto& r : t_only.rows()) {
    const Rational& c = r.coeffs[0];
    if (c == 0 && r.rhs < 0) return true;
    if (c > 0 && r.rhs <= 0) return true;
  }
  return false;
}

LinearInequalitySystem reduce(const LinearInequalitySystem& sys) {
  if (!is_feasible(sys)) {
    LinearInequalitySystem out(sys.num_vars());
    out.add_row(std::vector<Rational>(sys.num_vars(), Rational(0)), Rational(-1));
    return out;
  }
  std::vector<Inequality> rows;
  const LinearInequalitySystem unique = deduplicate(sys);
  for (const auto& r : unique.rows())
    if (!r.is_constant()) rows.push_back(r);

  std::vector<bool> alive(rows.size(), true);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    LinearInequalitySystem others(sys.num_vars());
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (j != i && alive[j]) others.add_row(rows[j]);
    if (implies(others, rows[i])) alive[i] = false;
  }
  LinearInequalitySystem out(sys.num_vars());
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (alive[i]) out.add_row(rows[i]);
  return out;
}

bool equivalent(const LinearInequalitySystem& a, const LinearInequalitySystem& b) {
  if (a.num_vars() != b.num_vars()) return false;
  for (const auto& r : a.rows())
    if (!implies(b, r)) return false;
  for (const auto& r : b.rows())
    if (!implies(a, r)) return false;
  return true;
}

bool satisfies(const LinearInequalitySystem& sys, std::span<const Rational> point) {
  if (point.size() != sys.num_vars()) throw InputError("satisfies: point dimension mismatch");
  for (const auto& r : sys.rows()) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < point.size(); ++j) lhs += r.coeffs[j] * point[j];
    if (lhs > r.rhs) return false;
  }
  return true;
}

bool satisfies(const LinearInequalitySystem& sys, std::span<const double> point, double tol) {
  if (tol < 0) throw InputError("satisfies: negative tolerance");
  for (double s : slacks(sys, point))
    if (s < -tol) return false;
  return true;
}

std::vector<double> slacks(const LinearInequalitySystem& sys, std::span<const double> point) {
  if (point.size() != sys.num_vars()) throw InputError("satisfies: point dimension mismatch");
  std::vector<double> out;
  out.reserve(sys.size());
  for (const auto& r : sys.rows()) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < point.size(); ++j) lhs += r.coeffs[j].get_d() * point[j];
    out.push_back(r.rhs.get_d() - lhs);
  }
  return out;
}

std::string format_row(const Inequality& row) {
  std::string s;
  for (const auto& c : row.coeffs) {
    s += to_string(c);
    s += ' ';
  }
  s += "<= ";
  s += to_string(row.rhs);
  return s;
}

std::string dump(const LinearInequalitySystem& sys) {
  std::string out = "# vars: " + std::to_string(sys.num_vars()) + "\n";
  for (const auto& r : sys.rows()) {
    out += format_row(r);
    out += '\n';
  }
  return out;
}

LinearInequalitySystem parse_system(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Inequality> rows;
  long declared = -1;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      auto pos = line.find("vars:");
      if (pos != std::string::npos) {
        try {
          declared = std::stol(line.substr(pos + 5));
        } catch (const std::exception&) {
          throw InputError("line " + std::to_string(line_no) + ": malformed vars declaration");
        }
        if (declared < 0) throw InputError("line " + std::to_string(line_no) + ": negative vars count");
      }
      continue;
    }
    auto le = line.find("<=");
    if (le == std::string::npos) throw InputError("line " + std::to_string(line_no) + ": missing '<='");
    Inequality row;
    std::istringstream lhs(line.substr(0, le));
    std::string tok;
    try {
      while (lhs >> tok) row.coeffs.push_back(parse_rational(tok));
      row.rhs = parse_rational(line.substr(le + 2));
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!rows.empty() && rows.front().coeffs.size() != row.coeffs.size()) {
      throw InputError("line " + std::to_string(line_no) + ": inconsistent number of coefficients");
    }
    rows.push_back(std::move(row));
  }
  std::size_t n = rows.empty() ? 0 : rows.front().coeffs.size();
  if (declared >= 0) {
    if (!rows.empty() && static_cast<std::size_t>(declared) != n) {
      throw InputError("declared vars count does not match row width");
    }
    n = static_cast<std::size_t>(declared);
  }
  LinearInequalitySystem sys(n);
  for (auto& r : rows) sys.add_row(std::move(r));
  return sys;
}

}  // namespace vmp
