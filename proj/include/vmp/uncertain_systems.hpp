#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <optional>

#include "vmp/boxes_and_cones.hpp"
#include "vmp/matrix.hpp"

namespace vmp {

// x' = A(q) x + B(q) u + E(q) delta with q in Q, delta in D.
template <class T>
struct UncertainSystem {
  AffineFamily<T> A;
  AffineFamily<T> B;
  AffineFamily<T> E;
  Box<T> S;
  Box<T> U;
  Box<T> D;
  Box<T> Q;

  std::size_t n() const { return A.base.rows(); }
  std::size_t m() const { return B.base.cols(); }
  std::size_t l() const { return E.base.cols(); }
  std::size_t p() const { return Q.dim(); }

  // Throws InputError on inconsistent shapes or sets missing the origin.
  void validate() const;

  template <class U2>
  UncertainSystem<U2> cast() const {
    return UncertainSystem<U2>{A.template cast<U2>(), B.template cast<U2>(), E.template cast<U2>(),
                               S.template cast<U2>(),  U.template cast<U2>(), D.template cast<U2>(),
                               Q.template cast<U2>()};
  }
};

using UncertainLinearSystem = UncertainSystem<double>;
using ExactUncertainSystem = UncertainSystem<Rational>;

struct GainMatrix {
  double k11 = 0.0;
  double k22 = 0.0;
  double k23 = 0.0;

  std::array<double, 3> vec() const { return {k11, k22, k23}; }
  double norm() const;

  template <class T>
  Matrix<T> matrix() const {
    Matrix<T> K(2, 3);
    K(0, 0) = T(k11);
    K(1, 1) = T(k22);
    K(1, 2) = T(k23);
    return K;
  }
};

// Sparse 2x3 gain from exact entries.
template <class T>
Matrix<T> gain_from_entries(const T& k11, const T& k22, const T& k23) {
  Matrix<T> K(2, 3);
  K(0, 0) = k11;
  K(1, 1) = k22;
  K(1, 2) = k23;
  return K;
}

template <class T>
struct SystemMatrices {
  Matrix<T> A;
  Matrix<T> B;
  Matrix<T> E;
};

// Warns on stderr when q lies outside Q.
template <class T>
SystemMatrices<T> eval_matrices(const UncertainSystem<T>& sys, std::span<const T> q);

// F(q) = A(q) + B(q) K, returned as an affine family in q.
template <class T>
AffineFamily<T> closed_loop(const UncertainSystem<T>& sys, const Matrix<T>& K);

struct Violation {
  std::vector<double> vertex;
  std::vector<double> param_vertex;       // empty for admissibility checks
  std::vector<double> disturbance_vertex; // empty for admissibility checks
  std::string row;
  double slack = 0.0;
};

struct CertificateReport {
  std::string check;
  bool holds = true;
  std::vector<Violation> violations;

  std::string to_text() const;
  std::string to_csv() const;
};

inline constexpr double kCertificateTol = 1e-9;

// K v in U for every vertex v of S. Exact when T is Rational and tol = 0.
template <class T>
CertificateReport check_admissible(const Matrix<T>& K, const Box<T>& S, const Box<T>& U,
                                   double tol = kCertificateTol);

// v + tau (F(w) v + E(w) r) in S for all vertex triples.
template <class T>
CertificateReport check_D_invariant_euler(const UncertainSystem<T>& sys, const Matrix<T>& K, const T& tau,
                                          double tol = kCertificateTol);

// Supremum of the tau for which the Euler check holds exactly: 0 when some
// vertex flow leaves S through an active face, nullopt when no flow ever
// reaches an opposite face. Flow components within tol of zero are ignored.
template <class T>
std::optional<T> max_euler_step(const UncertainSystem<T>& sys, const Matrix<T>& K, double tol = 0.0);

// (I + tau F(w)) v in the shifted vertex cone C_i* for all (v, w).
template <class T>
CertificateReport check_D_invariant_cone(const UncertainSystem<T>& sys, const Matrix<T>& K, const T& tau,
                                         double tol = kCertificateTol);

}  // namespace vmp
