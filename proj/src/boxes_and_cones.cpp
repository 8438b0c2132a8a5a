#include "vmp/boxes_and_cones.hpp"

#include <optional>
#include <string>

namespace vmp {

template <class T>
Box<T>::Box(std::vector<T> lo_, std::vector<T> hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.size() != hi.size()) throw InputError("box bounds have different dimensions");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) throw InputError("box needs lo <= hi in dimension " + std::to_string(i));
  }
}

template <class T>
Box<T> Box<T>::symmetric(std::vector<T> radius) {
  std::vector<T> lo;
  for (const auto& r : radius) lo.push_back(-r);
  return Box(std::move(lo), std::move(radius));
}

template <class T>
bool Box<T>::contains(std::span<const T> x, double tol) const {
  if (x.size() != dim()) throw InputError("box membership: dimension mismatch");
  const T t(tol);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] < lo[i] - t || x[i] > hi[i] + t) return false;
  }
  return true;
}

template <class T>
bool Box<T>::contains_origin() const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (lo[i] > 0 || hi[i] < 0) return false;
  return true;
}

template <class T>
bool Box<T>::is_vertex(std::span<const T> v) const {
  if (v.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (v[i] != lo[i] && v[i] != hi[i]) return false;
  return true;
}

template <class T>
std::vector<std::vector<T>> Box<T>::vertices() const {
  const std::size_t n = dim();
  if (n > kMaxVertexDim) {
    throw InputError("vertex enumeration limited to dimension " + std::to_string(kMaxVertexDim));
  }
  const std::size_t count = std::size_t{1} << n;
  std::vector<std::vector<T>> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<T> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      bool take_lo = (k >> (n - 1 - i)) & 1U;
      v[i] = take_lo ? lo[i] : hi[i];
    }
    out.push_back(std::move(v));
  }
  return out;
}

template <class T>
Matrix<T> AffineFamily<T>::eval(std::span<const T> q) const {
  if (q.size() != terms.size()) {
    throw InputError("family expects " + std::to_string(terms.size()) + " parameters, got " +
                     std::to_string(q.size()));
  }
  Matrix<T> out = base;
  for (std::size_t l = 0; l < terms.size(); ++l) {
    if (q[l] == 0) continue;
    out += terms[l] * q[l];
  }
  return out;
}

template <class T>
HalfspaceCone<T> vertex_cone(const Box<T>& box, std::span<const T> v) {
  if (!box.is_vertex(v)) throw InputError("vertex_cone: point is not a vertex of the box");
  HalfspaceCone<T> cone;
  const std::size_t n = box.dim();
  for (std::size_t i = 0; i < n; ++i) {
    ConeRow<T> row{std::vector<T>(n, T(0)), T(1)};
    if (v[i] == box.hi[i]) {
      if (!(box.hi[i] > 0)) throw InputError("vertex_cone: face through the origin cannot be normalized");
      row.g[i] = T(1) / box.hi[i];
    } else {
      if (!(box.lo[i] < 0)) throw InputError("vertex_cone: face through the origin cannot be normalized");
      row.g[i] = T(-1) / (-box.lo[i]);
    }
    cone.rows.push_back(std::move(row));
  }
  return cone;
}

template <class T>
T worst_disturbance_push(std::span<const T> g, const AffineFamily<T>& E,
                         const std::vector<std::vector<T>>& q_vertices,
                         const std::vector<std::vector<T>>& d_vertices) {
  std::optional<T> best;
  for (const auto& w : q_vertices) {
    Matrix<T> Ew = E.eval(w);
    // g^T E(w), then dotted with each disturbance vertex.
    std::vector<T> gE(Ew.cols(), T(0));
    for (std::size_t i = 0; i < Ew.rows(); ++i)
      for (std::size_t j = 0; j < Ew.cols(); ++j) gE[j] += g[i] * Ew(i, j);
    for (const auto& r : d_vertices) {
      T val = dot<T>(gE, r);
      if (!best || val > *best) best = val;
    }
  }
  return best.value_or(T(0));
}

template <class T>
HalfspaceCone<T> shifted_cone(const HalfspaceCone<T>& cone, const T& tau, const AffineFamily<T>& E,
                              const std::vector<std::vector<T>>& q_vertices,
                              const std::vector<std::vector<T>>& d_vertices) {
  if (!(tau > 0)) throw InputError("shifted_cone: tau must be positive");
  HalfspaceCone<T> out = cone;
  for (auto& row : out.rows) {
    T push = worst_disturbance_push<T>(row.g, E, q_vertices, d_vertices);
    row.xi -= tau * push;
  }
  return out;
}

template struct Box<double>;
template struct Box<Rational>;
template struct AffineFamily<double>;
template struct AffineFamily<Rational>;
template HalfspaceCone<double> vertex_cone(const Box<double>&, std::span<const double>);
template HalfspaceCone<Rational> vertex_cone(const Box<Rational>&, std::span<const Rational>);
template double worst_disturbance_push(std::span<const double>, const AffineFamily<double>&,
                                       const std::vector<std::vector<double>>&,
                                       const std::vector<std::vector<double>>&);
template Rational worst_disturbance_push(std::span<const Rational>, const AffineFamily<Rational>&,
                                         const std::vector<std::vector<Rational>>&,
                                         const std::vector<std::vector<Rational>>&);
template HalfspaceCone<double> shifted_cone(const HalfspaceCone<double>&, const double&,
                                            const AffineFamily<double>&,
                                            const std::vector<std::vector<double>>&,
                                            const std::vector<std::vector<double>>&);
template HalfspaceCone<Rational> shifted_cone(const HalfspaceCone<Rational>&, const Rational&,
                                              const AffineFamily<Rational>&,
                                              const std::vector<std::vector<Rational>>&,
                                              const std::vector<std::vector<Rational>>&);

}  // namespace vmp
