#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vmp/matrix.hpp"

namespace vmp {

inline constexpr std::size_t kMaxVertexDim = 20;

// Zero-width intervals are allowed (a disturbance that is switched off);
// vertices() then repeats points, which the vertex checks tolerate.
template <class T>
struct Box {
  std::vector<T> lo;
  std::vector<T> hi;

  Box() = default;
  Box(std::vector<T> lo_, std::vector<T> hi_);
  // [-r_i, r_i] in every dimension.
  static Box symmetric(std::vector<T> radius);

  std::size_t dim() const { return lo.size(); }
  bool contains(std::span<const T> x, double tol = 0.0) const;
  bool contains_origin() const;
  bool is_vertex(std::span<const T> v) const;

  // 2^n vertices. Dimension 0 is the most significant digit; hi precedes lo.
  std::vector<std::vector<T>> vertices() const;

  template <class U>
  Box<U> cast() const {
    Box<U> out;
    for (std::size_t i = 0; i < dim(); ++i) {
      out.lo.push_back(Matrix<T>::template convert<U>(lo[i]));
      out.hi.push_back(Matrix<T>::template convert<U>(hi[i]));
    }
    return out;
  }
};

template <class T>
struct ConeRow {
  std::vector<T> g;
  T xi;
};

// Rows g.s <= xi.
template <class T>
struct HalfspaceCone {
  std::vector<ConeRow<T>> rows;
};

// A(q) = base + sum_l q_l terms[l].
template <class T>
struct AffineFamily {
  Matrix<T> base;
  std::vector<Matrix<T>> terms;

  std::size_t num_params() const { return terms.size(); }
  Matrix<T> eval(std::span<const T> q) const;

  template <class U>
  AffineFamily<U> cast() const {
    AffineFamily<U> out;
    out.base = base.template cast<U>();
    for (const auto& t : terms) out.terms.push_back(t.template cast<U>());
    return out;
  }
};

template <class T>
HalfspaceCone<T> vertex_cone(const Box<T>& box, std::span<const T> v);

// Each row's offset drops by max over (w, r) of tau * g.E(w).r.
template <class T>
HalfspaceCone<T> shifted_cone(const HalfspaceCone<T>& cone, const T& tau, const AffineFamily<T>& E,
                              const std::vector<std::vector<T>>& q_vertices,
                              const std::vector<std::vector<T>>& d_vertices);

// max over (w, r) of g.E(w).r, the quantity the shift subtracts before tau.
template <class T>
T worst_disturbance_push(std::span<const T> g, const AffineFamily<T>& E,
                         const std::vector<std::vector<T>>& q_vertices,
                         const std::vector<std::vector<T>>& d_vertices);

}  // namespace vmp
