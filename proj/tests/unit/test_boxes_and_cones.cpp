#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "vmp/boxes_and_cones.hpp"
#include "vmp/errors.hpp"
#include "vmp/scenarios.hpp"

using namespace vmp;

namespace {

double dotd(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("vertices: order and count") {
  Box<double> line({-1.0}, {2.0});
  auto v = line.vertices();
  REQUIRE(v.size() == 2);
  CHECK(v[0][0] == 2.0);
  CHECK(v[1][0] == -1.0);

  Box<double> sq = Box<double>::symmetric({1.0, 1.0});
  auto w = sq.vertices();
  REQUIRE(w.size() == 4);
  CHECK(w[0] == std::vector<double>{1, 1});
  CHECK(w[1] == std::vector<double>{1, -1});
  CHECK(w[2] == std::vector<double>{-1, 1});
  CHECK(w[3] == std::vector<double>{-1, -1});

  const double a = 0.4, b = fixtures::pi / 4;
  auto S = Box<double>::symmetric({a, a, b}).vertices();
  CHECK(S.size() == 8);
  CHECK(S[0] == std::vector<double>{a, a, b});
}

TEST_CASE("vertices: dimension guard and malformed boxes") {
  Box<double> big = Box<double>::symmetric(std::vector<double>(21, 1.0));
  CHECK_THROWS_AS(big.vertices(), InputError);
  CHECK_THROWS_AS(Box<double>({1.0}, {0.0}), InputError);
  CHECK_THROWS_AS(Box<double>({1.0, 2.0}, {3.0}), InputError);
}

TEST_CASE("vertex_cone examples") {
  Box<double> sq = Box<double>::symmetric({1.0, 1.0});
  std::vector<double> v11{1, 1}, v1m{1, -1};
  auto c = vertex_cone(sq, std::span<const double>(v11));
  REQUIRE(c.rows.size() == 2);
  CHECK(c.rows[0].g == std::vector<double>{1, 0});
  CHECK(c.rows[1].g == std::vector<double>{0, 1});
  CHECK(c.rows[0].xi == 1);
  auto d = vertex_cone(sq, std::span<const double>(v1m));
  CHECK(d.rows[1].g == std::vector<double>{0, -1});
  CHECK(d.rows[1].xi == 1);

  const double a = 0.4, b = fixtures::pi / 4;
  Box<double> S = Box<double>::symmetric({a, a, b});
  std::vector<double> v{a, a, b};
  auto e = vertex_cone(S, std::span<const double>(v));
  CHECK(e.rows[0].g[0] == doctest::Approx(1 / a));
  CHECK(e.rows[1].g[1] == doctest::Approx(1 / a));
  CHECK(e.rows[2].g[2] == doctest::Approx(1 / b));

  std::vector<double> inside{0.5, 0.5};
  CHECK_THROWS_AS(vertex_cone(sq, std::span<const double>(inside)), InputError);
}

TEST_CASE("shifted_cone examples") {
  Box<double> line = Box<double>::symmetric({1.0});
  std::vector<double> v{1.0};
  auto cone = vertex_cone(line, std::span<const double>(v));
  AffineFamily<double> E;
  E.base = Matrix<double>::from_rows({{1.0}});
  std::vector<std::vector<double>> qv{{}}, dv{{0.3}, {-0.3}};
  auto s = shifted_cone(cone, 1.0, E, qv, dv);
  CHECK(s.rows[0].xi == doctest::Approx(0.7));

  AffineFamily<double> Z;
  Z.base = Matrix<double>(1, 1);
  CHECK(shifted_cone(cone, 1.0, Z, qv, dv).rows[0].xi == 1.0);
  CHECK_THROWS_AS(shifted_cone(cone, 0.0, E, qv, dv), InputError);
}

TEST_CASE("shifted_cone on the basic scenario: beta row drops by Omega_L / b") {
  const BasicScenario sc = fixtures::basic();
  UncertainLinearSystem sys = build_basic_system(sc);
  const std::vector<double> v = sys.S.vertices()[0];
  CHECK(v[2] == doctest::Approx(sc.b));
  auto cone = vertex_cone(sys.S, std::span<const double>(v));
  auto s = shifted_cone(cone, 1.0, sys.E, sys.Q.vertices(), sys.D.vertices());
  CHECK(s.rows[2].xi == doctest::Approx(1 - sc.Omega_L / sc.b).epsilon(1e-12));
}

TEST_CASE("property: vertices lie on their own cone, box inside every cone") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(0.1, 2.0), P(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 4;
    std::vector<double> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = -U(rng);
      hi[i] = U(rng);
    }
    Box<double> box(lo, hi);
    for (const auto& v : box.vertices()) {
      auto cone = vertex_cone(box, std::span<const double>(v));
      for (const auto& r : cone.rows) CHECK(dotd(r.g, v) == doctest::Approx(r.xi));
      for (int k = 0; k < 20; ++k) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * P(rng);
        for (const auto& r : cone.rows) CHECK(dotd(r.g, x) <= r.xi + 1e-12);
      }
    }
  }
}

TEST_CASE("property: tau times lambda with E over lambda leaves the shift unchanged") {
  const BasicScenario sc = fixtures::basic();
  UncertainLinearSystem sys = build_basic_system(sc);
  auto qv = sys.Q.vertices();
  auto dv = sys.D.vertices();
  for (double lambda : {0.5, 2.0, 10.0}) {
    AffineFamily<double> scaled = sys.E;
    scaled.base = scaled.base * (1 / lambda);
    for (auto& t : scaled.terms) t = t * (1 / lambda);
    for (const auto& v : sys.S.vertices()) {
      auto cone = vertex_cone(sys.S, std::span<const double>(v));
      auto a = shifted_cone(cone, 1.0, sys.E, qv, dv);
      auto b = shifted_cone(cone, lambda, scaled, qv, dv);
      for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].xi == doctest::Approx(b.rows[i].xi));
    }
  }
}
