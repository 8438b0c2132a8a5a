#include "vmp/uncertain_systems.hpp"

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

namespace vmp {

namespace {

template <class T>
void check_family(const AffineFamily<T>& f, std::size_t rows, std::size_t cols, std::size_t params,
                  const char* name) {
  auto bad = [&](const Matrix<T>& m) { return m.rows() != rows || m.cols() != cols; };
  if (bad(f.base)) throw InputError(std::string(name) + " base matrix has the wrong shape");
  if (f.terms.size() != params) throw InputError(std::string(name) + " family has the wrong parameter count");
  for (const auto& t : f.terms)
    if (bad(t)) throw InputError(std::string(name) + " term matrix has the wrong shape");
}

std::string format_vec(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(10);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

std::string format_vec_csv(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

std::string bound_label(std::size_t dim, bool upper) {
  return "x" + std::to_string(dim) + (upper ? " <= hi" : " >= lo");
}

}  // namespace

template <class T>
void UncertainSystem<T>::validate() const {
  const std::size_t nn = A.base.rows();
  if (A.base.cols() != nn) throw InputError("A must be square");
  check_family(A, nn, nn, Q.dim(), "A");
  check_family(B, nn, B.base.cols(), Q.dim(), "B");
  check_family(E, nn, E.base.cols(), Q.dim(), "E");
  if (S.dim() != nn) throw InputError("S dimension differs from the state dimension");
  if (U.dim() != B.base.cols()) throw InputError("U dimension differs from the input dimension");
  if (D.dim() != E.base.cols()) throw InputError("D dimension differs from the disturbance dimension");
  for (const Box<T>* b : {&S, &U, &D, &Q})
    if (!b->contains_origin()) throw InputError("S, U, D and Q must contain the origin");
}

double GainMatrix::norm() const { return std::sqrt(k11 * k11 + k22 * k22 + k23 * k23); }

template <class T>
SystemMatrices<T> eval_matrices(const UncertainSystem<T>& sys, std::span<const T> q) {
  if (q.size() != sys.Q.dim()) throw InputError("eval_matrices: parameter dimension mismatch");
  if (!sys.Q.contains(q, 1e-12)) std::cerr << "warning: parameter vector outside Q\n";
  return {sys.A.eval(q), sys.B.eval(q), sys.E.eval(q)};
}

template <class T>
AffineFamily<T> closed_loop(const UncertainSystem<T>& sys, const Matrix<T>& K) {
  if (K.rows() != sys.m() || K.cols() != sys.n()) throw InputError("closed_loop: gain has the wrong shape");
  AffineFamily<T> F;
  F.base = sys.A.base + sys.B.base * K;
  for (std::size_t l = 0; l < sys.A.terms.size(); ++l) F.terms.push_back(sys.A.terms[l] + sys.B.terms[l] * K);
  return F;
}

std::string CertificateReport::to_text() const {
  std::ostringstream os;
  os << check << ": " << (holds ? "holds" : "fails") << " (" << violations.size() << " violations)\n";
  for (const auto& v : violations) {
    os << "  vertex " << format_vec(v.vertex);
    if (!v.param_vertex.empty()) os << " w " << format_vec(v.param_vertex);
    if (!v.disturbance_vertex.empty()) os << " r " << format_vec(v.disturbance_vertex);
    os << " row [" << v.row << "] slack " << v.slack << '\n';
  }
  return os.str();
}

std::string CertificateReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "check,vertex,param_vertex,disturbance_vertex,row,slack\n";
  for (const auto& v : violations) {
    os << check << ',' << format_vec_csv(v.vertex) << ',' << format_vec_csv(v.param_vertex) << ','
       << format_vec_csv(v.disturbance_vertex) << ',' << v.row << ',' << v.slack << '\n';
  }
  return os.str();
}

template <class T>
CertificateReport check_admissible(const Matrix<T>& K, const Box<T>& S, const Box<T>& U, double tol) {
  if (K.cols() != S.dim() || K.rows() != U.dim()) throw InputError("check_admissible: shape mismatch");
  CertificateReport rep;
  rep.check = "admissibility";
  const T t(tol);
  for (const auto& v : S.vertices()) {
    auto u = K * v;
    for (std::size_t j = 0; j < u.size(); ++j) {
      T upper = U.hi[j] - u[j];
      T lower = u[j] - U.lo[j];
      if (upper < -t) rep.violations.push_back({to_double_vec(v), {}, {}, "u" + std::to_string(j) + " <= hi", to_double(upper)});
      if (lower < -t) rep.violations.push_back({to_double_vec(v), {}, {}, "u" + std::to_string(j) + " >= lo", to_double(lower)});
    }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

template <class T>
CertificateReport check_D_invariant_euler(const UncertainSystem<T>& sys, const Matrix<T>& K, const T& tau,
                                          double tol) {
  if (!(tau > 0)) throw InputError("tau must be positive");
  AffineFamily<T> F = closed_loop(sys, K);
  CertificateReport rep;
  rep.check = "D-invariance (Euler)";
  const T t(tol);
  const auto qv = sys.Q.vertices();
  const auto dv = sys.D.vertices();
  for (const auto& v : sys.S.vertices()) {
    for (const auto& w : qv) {
      auto Fv = F.eval(w) * v;
      Matrix<T> Ew = sys.E.eval(w);
      for (const auto& r : dv) {
        auto Er = Ew * r;
        for (std::size_t i = 0; i < v.size(); ++i) {
          T next = v[i] + tau * (Fv[i] + Er[i]);
          T upper = sys.S.hi[i] - next;
          T lower = next - sys.S.lo[i];
          if (upper < -t)
            rep.violations.push_back({to_double_vec(v), to_double_vec(w), to_double_vec(r), bound_label(i, true), to_double(upper)});
          if (lower < -t)
            rep.violations.push_back({to_double_vec(v), to_double_vec(w), to_double_vec(r), bound_label(i, false), to_double(lower)});
        }
      }
    }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

template <class T>
std::optional<T> max_euler_step(const UncertainSystem<T>& sys, const Matrix<T>& K, double tol) {
  AffineFamily<T> F = closed_loop(sys, K);
  const T t(tol);
  std::optional<T> best;
  const auto qv = sys.Q.vertices();
  const auto dv = sys.D.vertices();
  for (const auto& v : sys.S.vertices()) {
    for (const auto& w : qv) {
      auto Fv = F.eval(w) * v;
      Matrix<T> Ew = sys.E.eval(w);
      for (const auto& r : dv) {
        auto Er = Ew * r;
        for (std::size_t i = 0; i < v.size(); ++i) {
          T g = Fv[i] + Er[i];
          if (g <= t && g >= -t) continue;
          T room = g > T(0) ? sys.S.hi[i] - v[i] : v[i] - sys.S.lo[i];
          T bound = room / (g > T(0) ? g : -g);
          if (!best || bound < *best) best = bound;
        }
      }
    }
  }
  return best;
}

template <class T>
CertificateReport check_D_invariant_cone(const UncertainSystem<T>& sys, const Matrix<T>& K, const T& tau,
                                         double tol) {
  if (!(tau > 0)) throw InputError("tau must be positive");
  AffineFamily<T> F = closed_loop(sys, K);
  CertificateReport rep;
  rep.check = "D-invariance (shifted cones)";
  const T t(tol);
  const auto qv = sys.Q.vertices();
  const auto dv = sys.D.vertices();
  const std::size_t n = sys.n();
  for (const auto& v : sys.S.vertices()) {
    HalfspaceCone<T> cone = shifted_cone(vertex_cone(sys.S, std::span<const T>(v)), tau, sys.E, qv, dv);
    std::vector<std::optional<std::vector<double>>> worst_r(cone.rows.size());
    for (const auto& w : qv) {
      auto Fv = F.eval(w) * v;
      std::vector<T> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = v[i] + tau * Fv[i];
      for (std::size_t h = 0; h < cone.rows.size(); ++h) {
        const auto& row = cone.rows[h];
        T slack = row.xi - dot<T>(row.g, y);
        if (slack < -t) {
          // Report the disturbance vertex that realizes the shift for this row.
          if (!worst_r[h]) {
            std::optional<T> best;
            for (const auto& wj : qv) {
              Matrix<T> Ew = sys.E.eval(wj);
              for (const auto& r : dv) {
                T val = dot<T>(row.g, Ew * r);
                if (!best || val > *best) {
                  best = val;
                  worst_r[h] = to_double_vec(r);
                }
              }
            }
          }
          bool upper = row.g[h] > 0;
          rep.violations.push_back(
              {to_double_vec(v), to_double_vec(w), worst_r[h].value_or(std::vector<double>{}), bound_label(h, upper),
               to_double(slack)});
        }
      }
    }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

template struct UncertainSystem<double>;
template struct UncertainSystem<Rational>;
template SystemMatrices<double> eval_matrices(const UncertainSystem<double>&, std::span<const double>);
template SystemMatrices<Rational> eval_matrices(const UncertainSystem<Rational>&, std::span<const Rational>);
template AffineFamily<double> closed_loop(const UncertainSystem<double>&, const Matrix<double>&);
template AffineFamily<Rational> closed_loop(const UncertainSystem<Rational>&, const Matrix<Rational>&);
template CertificateReport check_admissible(const Matrix<double>&, const Box<double>&, const Box<double>&, double);
template CertificateReport check_admissible(const Matrix<Rational>&, const Box<Rational>&, const Box<Rational>&, double);
template CertificateReport check_D_invariant_euler(const UncertainSystem<double>&, const Matrix<double>&, const double&, double);
template CertificateReport check_D_invariant_euler(const UncertainSystem<Rational>&, const Matrix<Rational>&, const Rational&, double);
template std::optional<double> max_euler_step(const UncertainSystem<double>&, const Matrix<double>&, double);
template std::optional<Rational> max_euler_step(const UncertainSystem<Rational>&, const Matrix<Rational>&, double);
template CertificateReport check_D_invariant_cone(const UncertainSystem<double>&, const Matrix<double>&, const double&, double);
template CertificateReport check_D_invariant_cone(const UncertainSystem<Rational>&, const Matrix<Rational>&, const Rational&, double);

}  // namespace vmp
