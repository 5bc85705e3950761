#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "aerotda/filtration.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aerotda;

namespace {

DistanceMatrix rows(std::vector<std::vector<double>> r) { return DistanceMatrix::from_rows(r); }

std::map<Simplex, double> value_map(const Filtration& f) {
  std::map<Simplex, double> m;
  for (const auto& e : f) m[e.simplex] = e.value;
  return m;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("Simplex basics") {
  const Simplex t(0, 2, 5);
  CHECK(t.dim() == 2);
  const auto f = t.facets();
  REQUIRE(f.size() == 3);
  CHECK(f[0] == Simplex(0, 2));
  CHECK(f[1] == Simplex(0, 5));
  CHECK(f[2] == Simplex(2, 5));
  CHECK(Simplex(3).facets().empty());
  CHECK(Simplex(9) < Simplex(0, 1));
  CHECK(Simplex(0, 2) < Simplex(1, 2));
  CHECK_THROWS_AS(Simplex(2, 1), Error);
  CHECK_THROWS_AS(Simplex(1, 1), Error);
  CHECK_THROWS_AS(Simplex(-1), Error);
}

TEST_CASE("VR of three points") {
  const auto d = rows({{0, 1, 2}, {1, 0, 1.5}, {2, 1.5, 0}});
  const Filtration f = vietoris_rips(d);
  REQUIRE(f.size() == 7);
  const std::vector<FiltrationEntry> expected{
      {Simplex(0), 0}, {Simplex(1), 0},    {Simplex(2), 0},      {Simplex(0, 1), 1},
      {Simplex(1, 2), 1.5}, {Simplex(0, 2), 2}, {Simplex(0, 1, 2), 2}};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(f[i].simplex == expected[i].simplex);
    CHECK(f[i].value == expected[i].value);
  }
  CHECK(vietoris_rips(d, 1).size() == 6);
  CHECK(vietoris_rips(d, 0).size() == 3);
  CHECK(vietoris_rips(d, 2, 1.5).size() == 5);
}

TEST_CASE("VR of one point") {
  const Filtration f = vietoris_rips(rows({{0}}));
  REQUIRE(f.size() == 1);
  CHECK(f[0].simplex == Simplex(0));
  CHECK(f[0].value == 0.0);
}

TEST_CASE("VR of the unit square") {
  const std::vector<Point2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const Filtration f = vietoris_rips(euclidean_matrix(sq));
  CHECK(f.size() == 4 + 6 + 4);
  std::map<double, int> per_value_edges, per_value_tris;
  for (const auto& e : f) {
    if (e.simplex.dim() == 1) ++per_value_edges[e.value];
    if (e.simplex.dim() == 2) ++per_value_tris[e.value];
  }
  CHECK(per_value_edges[1.0] == 4);
  CHECK(per_value_edges[std::sqrt(2.0)] == 2);
  CHECK(per_value_tris.size() == 1);
  CHECK(per_value_tris[std::sqrt(2.0)] == 4);
}

TEST_CASE("max_dim above 2 is refused") {
  const auto d = rows({{0, 1}, {1, 0}});
  CHECK(kind_of([&] { vietoris_rips(d, 3); }) == ErrorKind::UnsupportedDimension);
  CHECK(kind_of([&] { vietoris_rips(d, -1); }) == ErrorKind::UnsupportedDimension);
}

TEST_CASE("VR structural properties on random clouds") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto pts = oracle::random_cloud(rng, 4 + trial % 9);
    const auto d = euclidean_matrix(pts);
    const Filtration f = vietoris_rips(d);
    const auto vals = value_map(f);
    const std::size_t n = pts.size();
    CHECK(f.size() == n + n * (n - 1) / 2 + n * (n - 1) * (n - 2) / 6);

    // Order: (value, dim, vertices), faces strictly before cofaces.
    std::map<Simplex, std::size_t> index;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i > 0) CHECK(filtration_less(f[i - 1], f[i]));
      index[f[i].simplex] = i;
      for (const auto& face : f[i].simplex.facets()) {
        REQUIRE(index.count(face) == 1);
        CHECK(index[face] < i);
        CHECK(vals.at(face) <= f[i].value);
      }
    }
    // Values come straight from the distances; triangles are cliques.
    for (const auto& [s, v] : vals) {
      if (s.dim() == 0) CHECK(v == 0.0);
      if (s.dim() == 1) CHECK(v == d(s[0], s[1]));
      if (s.dim() == 2) {
        CHECK(v == std::max({d(s[0], s[1]), d(s[0], s[2]), d(s[1], s[2])}));
      }
    }
    // Sublevel complexes are nested and closed under faces; a triangle is in
    // iff its three edges are.
    std::uniform_real_distribution<double> u(0.0, 1.5);
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const auto la = f.sublevel(a);
    const auto lb = f.sublevel(b);
    const std::set<Simplex> sa(la.begin(), la.end()), sb(lb.begin(), lb.end());
    CHECK(std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()));
    for (int i = 0; i < static_cast<int>(n); ++i) {
      for (int j = i + 1; j < static_cast<int>(n); ++j) {
        for (int k = j + 1; k < static_cast<int>(n); ++k) {
          const bool edges = sb.count(Simplex(i, j)) && sb.count(Simplex(i, k)) && sb.count(Simplex(j, k));
          CHECK(edges == (sb.count(Simplex(i, j, k)) == 1));
        }
      }
    }
  }
}

TEST_CASE("Filtration::from_entries validation") {
  std::vector<FiltrationEntry> good{{Simplex(0, 1), 1.0}, {Simplex(1), 0.0}, {Simplex(0), 0.0}};
  const Filtration f = Filtration::from_entries(good);
  CHECK(f[2].simplex == Simplex(0, 1));
  CHECK(f.vertex_count() == 2);
  CHECK(f.max_dim() == 1);

  CHECK(kind_of([] { Filtration::from_entries({{Simplex(0), 0.0}, {Simplex(0, 1), 1.0}}); }) ==
        ErrorKind::InvalidFiltration);
  CHECK(kind_of([] {
          Filtration::from_entries({{Simplex(0), 0.0}, {Simplex(1), 2.0}, {Simplex(0, 1), 1.0}});
        }) == ErrorKind::InvalidFiltration);
  CHECK(kind_of([] { Filtration::from_entries({{Simplex(0), 0.0}, {Simplex(0), 0.0}}); }) ==
        ErrorKind::InvalidFiltration);
}

TEST_CASE("minimum enclosing radius") {
  CHECK(min_enclosing_radius({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}) ==
        doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(min_enclosing_radius({0, 0}, {2, 0}, {1, 0.1}) == doctest::Approx(1.0));
  CHECK(min_enclosing_radius({0, 0}, {2, 0}, {0, 2}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(min_enclosing_radius({0, 0}, {1, 0}, {2, 0}) == doctest::Approx(1.0));
  CHECK(min_enclosing_radius({1, 1}, {1, 1}, {1, 1}) == 0.0);
}

TEST_CASE("Cech on the equilateral triangle") {
  const std::vector<Point2> tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  auto has_triangle = [](const std::vector<Simplex>& c) {
    return std::find(c.begin(), c.end(), Simplex(0, 1, 2)) != c.end();
  };
  const auto half = cech(tri, 2, 0.5);
  CHECK(half.size() == 6);
  CHECK_FALSE(has_triangle(half));
  // The Rips complex at the same scale already fills the triangle.
  CHECK(vietoris_rips(euclidean_matrix(tri)).sublevel(radius_to_value(0.5)).size() == 7);

  const auto wide = cech(tri, 2, 0.7);
  CHECK(wide.size() == 7);
  CHECK(has_triangle(wide));

  CHECK(cech(tri, 2, 0.0).size() == 3);
  CHECK(cech(tri, 2, 0.499).size() == 3);
}

TEST_CASE("Cech and Rips sandwich") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const auto pts = oracle::random_cloud(rng, 5 + trial % 6);
    const Filtration vr = vietoris_rips(euclidean_matrix(pts));
    std::uniform_real_distribution<double> u(0.0, 0.6);
    const double r = u(rng);
    const auto c1 = cech(pts, 2, r);
    const auto rips = vr.sublevel(radius_to_value(r));
    const auto c2 = cech(pts, 2, 2.0 * r);
    const std::set<Simplex> s1(c1.begin(), c1.end()), sr(rips.begin(), rips.end()),
        s2(c2.begin(), c2.end());
    CHECK(std::includes(sr.begin(), sr.end(), s1.begin(), s1.end()));
    CHECK(std::includes(s2.begin(), s2.end(), sr.begin(), sr.end()));
  }
}
