#include "vmp/gain_synthesis.hpp"

#include <cmath>
#include <optional>

namespace vmp {

namespace {

// Gaussian elimination over the rationals; nullopt when singular.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> M, std::vector<Rational> rhs) {
  const std::size_t k = rhs.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && M[piv][col] == 0) ++piv;
    if (piv == k) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || M[r][col] == 0) continue;
      Rational f = M[r][col] / M[col][col];
      for (std::size_t c = col; c < k; ++c) M[r][c] -= f * M[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rational> x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = rhs[i] / M[i][i];
  return x;
}

// Calls f(subset) for every subset of {0..n-1} of size 1..max_size, in
// lexicographic order by size then indices.
template <class F>
void for_each_subset(std::size_t n, std::size_t max_size, F&& f) {
  std::vector<std::size_t> idx;
  for (std::size_t size = 1; size <= std::min(n, max_size); ++size) {
    idx.resize(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      f(idx);
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

bool lex_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

// Smallest ||x + G_A^T lambda|| over lambda >= 0 supported on independent
// subsets of the active rows.
double kkt_residual(const std::vector<const Inequality*>& active, const std::vector<Rational>& x,
                    std::size_t num_vars) {
  Rational best = 0;
  for (const auto& xi : x) best += xi * xi;
  for_each_subset(active.size(), num_vars, [&](const std::vector<std::size_t>& s) {
    const std::size_t k = s.size();
    std::vector<std::vector<Rational>> gram(k, std::vector<Rational>(k));
    std::vector<Rational> rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& gi = active[s[i]]->coeffs;
      for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot<Rational>(gi, active[s[j]]->coeffs);
      rhs[i] = -dot<Rational>(gi, x);
    }
    auto lambda = solve(gram, rhs);
    if (!lambda) return;
    for (const auto& l : *lambda)
      if (l < 0) return;
    Rational r2 = 0;
    for (std::size_t c = 0; c < num_vars; ++c) {
      Rational comp = x[c];
      for (std::size_t i = 0; i < k; ++i) comp += (*lambda)[i] * active[s[i]]->coeffs[c];
      r2 += comp * comp;
    }
    if (r2 < best) best = r2;
  });
  return std::sqrt(best.get_d());
}

}  // namespace

NearestPoint min_norm_point(const LinearInequalitySystem& poly) {
  const std::size_t n = poly.num_vars();
  std::vector<const Inequality*> rows;
  for (const auto& r : poly.rows()) {
    if (r.is_constant()) {
      if (r.rhs < 0) throw InfeasibleError("gain polytope is empty (constant row " + format_row(r) + ")");
      continue;
    }
    rows.push_back(&r);
  }
  const std::size_t m = rows.size();

  std::optional<NearestPoint> best;
  auto consider = [&](std::vector<Rational> x, Rational norm2) {
    if (best) {
      if (norm2 > best->norm_squared) return;
      if (norm2 == best->norm_squared && !lex_less(x, best->point)) return;
    }
    for (const Inequality* r : rows)
      if (dot<Rational>(r->coeffs, x) > r->rhs) return;
    best = NearestPoint{std::move(x), std::move(norm2), {}, 0.0};
  };

  consider(std::vector<Rational>(n, Rational(0)), Rational(0));
  if (!best) {
    std::vector<std::vector<Rational>> gram(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) gram[i][j] = gram[j][i] = dot<Rational>(rows[i]->coeffs, rows[j]->coeffs);

    for_each_subset(m, n, [&](const std::vector<std::size_t>& s) {
      const std::size_t k = s.size();
      std::vector<std::vector<Rational>> G(k, std::vector<Rational>(k));
      std::vector<Rational> h(k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) G[i][j] = gram[s[i]][s[j]];
        h[i] = rows[s[i]]->rhs;
      }
      auto mu = solve(G, h);
      if (!mu) return;  // rank-deficient subset
      Rational norm2 = 0;
      for (std::size_t i = 0; i < k; ++i) norm2 += (*mu)[i] * h[i];
      if (best && norm2 > best->norm_squared) return;
      std::vector<Rational> x(n, Rational(0));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < n; ++c) x[c] += (*mu)[i] * rows[s[i]]->coeffs[c];
      consider(std::move(x), std::move(norm2));
    });
  }
  if (!best) throw InfeasibleError("gain polytope is empty");

  std::vector<const Inequality*> active;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Inequality& r = poly.row(i);
    if (r.is_constant()) continue;
    if (dot<Rational>(r.coeffs, best->point) == r.rhs) {
      best->active_rows.push_back(i);
      active.push_back(&r);
    }
  }
  best->kkt_residual = kkt_residual(active, best->point, n);
  return *best;
}

SynthesisResult min_norm_gain(const LinearInequalitySystem& poly) {
  if (poly.num_vars() != 3) throw InputError("min_norm_gain expects a system over (k11, k22, k23)");
  NearestPoint np = min_norm_point(poly);
  SynthesisResult out;
  out.exact = np.point;
  out.gain = GainMatrix{np.point[0].get_d(), np.point[1].get_d(), np.point[2].get_d()};
  out.norm = std::sqrt(np.norm_squared.get_d());
  out.active_rows = std::move(np.active_rows);
  out.kkt_residual = np.kkt_residual;
  return out;
}

bool is_strictly_interior(const LinearInequalitySystem& poly, const GainMatrix& gain, double eps) {
  const auto k = gain.vec();
  for (double s : slacks(poly, k))
    if (!(s > eps)) return false;
  return true;
}

}  // namespace vmp
