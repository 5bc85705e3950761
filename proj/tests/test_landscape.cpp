#include <algorithm>
#include <random>
#include <set>

#include "aerotda/diagram.hpp"
#include "aerotda/landscape.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aerotda;

namespace {

std::vector<oracle::Bar> bars_of(const PersistenceDiagram& d) {
  std::vector<oracle::Bar> out;
  for (const auto& p : d) out.push_back({p.birth, p.death});
  return out;
}

std::vector<double> dense_grid(double lo, double hi, int steps) {
  std::vector<double> g;
  for (int i = 0; i <= steps; ++i) g.push_back(lo + (hi - lo) * i / steps);
  return g;
}

// Distinct endpoints on a 1/64 grid: midpoints and half-lengths stay exact,
// and no three tents cross at a single point.
PersistenceDiagram generic_dyadic(std::mt19937_64& rng, std::size_t n) {
  std::vector<int> pool(400);
  for (int i = 0; i < 400; ++i) pool[static_cast<std::size_t>(i)] = i;
  std::shuffle(pool.begin(), pool.end(), rng);
  PersistenceDiagram d;
  for (std::size_t i = 0; i < n; ++i) {
    const int a = pool[2 * i], b = pool[2 * i + 1];
    d.add({std::min(a, b) / 64.0, std::max(a, b) / 64.0, 0});
  }
  return d;
}

void check_against_oracle(const PersistenceDiagram& d, double tol) {
  const Landscape l = from_diagram(d, 0);
  const auto bars = bars_of(d);
  double hi = 1.0;
  for (const auto& b : bars) hi = std::max(hi, b.death);
  for (double t : dense_grid(-1.0, hi + 1.0, 997)) {
    for (std::size_t k = 1; k <= bars.size() + 1; ++k) {
      REQUIRE(std::abs(l(k, t) - oracle::kth_max(bars, k, t)) <= tol);
    }
  }
}

}  // namespace

TEST_CASE("tent") {
  CHECK(tent(0, 2, 1) == 1.0);
  CHECK(tent(0, 2, 0) == 0.0);
  CHECK(tent(0, 2, 2) == 0.0);
  CHECK(tent(1, 5, 2) == 1.0);
  CHECK(tent(1, 5, -3) == 0.0);
  CHECK_THROWS_AS(tent(2, 2, 1), Error);
  CHECK_THROWS_AS(tent(3, 2, 1), Error);
}

TEST_CASE("from_diagram examples") {
  const Landscape single = from_diagram(PersistenceDiagram({{0, 2, 0}}), 0);
  REQUIRE(single.depth() == 1);
  CHECK(single.levels[0] == LandscapeLevel{{0, 0}, {1, 1}, {2, 0}});
  CHECK(single(2, 1.0) == 0.0);

  const Landscape twice = from_diagram(PersistenceDiagram({{0, 2, 0}, {0, 2, 0}}), 0);
  REQUIRE(twice.depth() == 2);
  CHECK(twice.levels[0] == twice.levels[1]);

  const Landscape two = from_diagram(PersistenceDiagram({{0, 4, 0}, {2, 6, 0}}), 0);
  REQUIRE(two.depth() == 2);
  CHECK(two.levels[0] == LandscapeLevel{{0, 0}, {2, 2}, {3, 1}, {4, 2}, {6, 0}});
  CHECK(two.levels[1] == LandscapeLevel{{2, 0}, {3, 1}, {4, 0}});
  check_against_oracle(PersistenceDiagram({{0, 4, 0}, {2, 6, 0}}), 1e-12);

  CHECK(from_diagram(PersistenceDiagram{}, 0).depth() == 0);
  // Essential points and other dimensions are ignored.
  CHECK(from_diagram(PersistenceDiagram({{0, kInfinity, 0}, {1, 3, 1}}), 0).depth() == 0);
  CHECK(from_diagram(PersistenceDiagram({{0, kInfinity, 0}, {1, 3, 1}}), 1).depth() == 1);
}

TEST_CASE("from_diagram agrees with the k-th max oracle") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    check_against_oracle(oracle::random_diagram(rng, 1 + trial % 9), 1e-12);
  }
  for (int trial = 0; trial < 20; ++trial) {
    // Heavy ties: small integer endpoints.
    PersistenceDiagram d;
    std::uniform_int_distribution<int> u(0, 5);
    for (int i = 0; i < 6; ++i) {
      int a = u(rng), b = u(rng);
      if (a != b) d.add({double(std::min(a, b)), double(std::max(a, b)), 0});
    }
    check_against_oracle(d, 1e-12);
  }
}

TEST_CASE("landscape invariants") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const Landscape l = from_diagram(oracle::random_diagram(rng, 1 + trial % 12), 0);
    CHECK(l.depth() <= static_cast<std::size_t>(1 + trial % 12));
    for (const auto& lvl : l.levels) {
      REQUIRE_FALSE(lvl.empty());
      for (std::size_t i = 0; i + 1 < lvl.size(); ++i) {
        CHECK(lvl[i].t < lvl[i + 1].t);
        CHECK(lvl[i].value >= 0.0);
        const double s = (lvl[i + 1].value - lvl[i].value) / (lvl[i + 1].t - lvl[i].t);
        const double r = std::round(s);
        CHECK(std::abs(s - r) < 1e-9);
        CHECK(std::abs(r) <= 1.0);
      }
    }
    std::uniform_real_distribution<double> u(-1.0, 11.0);
    for (int probe = 0; probe < 200; ++probe) {
      const double s = u(rng), t = u(rng);
      for (std::size_t k = 1; k <= l.depth(); ++k) {
        CHECK(l(k, t) >= l(k + 1, t));
        CHECK(std::abs(l(k, s) - l(k, t)) <= std::abs(s - t) + 1e-12);
      }
    }
  }
}

TEST_CASE("average examples") {
  const Landscape a = from_diagram(PersistenceDiagram({{0, 2, 0}}), 0);
  const Landscape b = from_diagram(PersistenceDiagram({{1, 3, 0}}), 0);
  const std::vector<Landscape> ab{a, b};
  const Landscape m = average(ab);
  CHECK(m.is_average);
  CHECK(m(1, 1.5) == doctest::Approx(0.5));
  CHECK(m(1, 1.0) == doctest::Approx(0.5));
  CHECK(m(1, 2.0) == doctest::Approx(0.5));

  const std::vector<Landscape> copies{a, a, a};
  const Landscape same = average(copies);
  CHECK(same.levels == a.levels);

  const std::vector<Landscape> with_zero{a, Landscape{}};
  const Landscape half = average(with_zero);
  for (double t : dense_grid(-1, 3, 40)) CHECK(half(1, t) == doctest::Approx(a(1, t) / 2));

  CHECK_THROWS_AS(average(std::span<const Landscape>{}), Error);
}

TEST_CASE("average is the pointwise mean and weights compose") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Landscape> ls;
    for (int i = 0; i < 3; ++i) ls.push_back(from_diagram(oracle::random_diagram(rng, 1 + (trial + i) % 6), 0));
    const Landscape m = average(ls);
    for (double t : dense_grid(-1, 11, 301)) {
      for (std::size_t k = 1; k <= 7; ++k) {
        const double mean = (ls[0](k, t) + ls[1](k, t) + ls[2](k, t)) / 3.0;
        REQUIRE(m(k, t) == doctest::Approx(mean).epsilon(1e-12));
      }
    }
    const std::vector<Landscape> first_two{ls[0], ls[1]};
    const std::vector<Landscape> nested{average(first_two), ls[2]};
    const std::vector<double> w{2.0, 1.0};
    CHECK(sup_distance(average_weighted(nested, w), m) <= 1e-12);
  }
  const std::vector<Landscape> one{Landscape{}};
  CHECK_THROWS_AS(average_weighted(one, std::vector<double>{0.0}), Error);
  CHECK_THROWS_AS(average_weighted(one, std::vector<double>{1.0, 2.0}), Error);
}

TEST_CASE("sup_distance examples") {
  const Landscape l = from_diagram(PersistenceDiagram({{0, 4, 0}, {2, 6, 0}}), 0);
  CHECK(sup_distance(l, l) == 0.0);
  CHECK(sup_distance(from_diagram(PersistenceDiagram({{0, 2, 0}}), 0), Landscape{}) == 1.0);
  CHECK(sup_distance(from_diagram(PersistenceDiagram({{0, 4, 0}}), 0),
                     from_diagram(PersistenceDiagram({{1, 5, 0}}), 0)) == 1.0);
}

TEST_CASE("sup_distance agrees with a dense grid and is bounded by the bottleneck distance") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 80; ++trial) {
    const auto d1 = oracle::random_diagram(rng, 1 + trial % 7);
    const auto d2 = oracle::random_diagram(rng, 1 + trial % 5);
    const Landscape l1 = from_diagram(d1, 0), l2 = from_diagram(d2, 0);
    const double sup = sup_distance(l1, l2);
    double grid_max = 0.0;
    for (double t : dense_grid(-1, 11, 2000)) {
      for (std::size_t k = 1; k <= 8; ++k) grid_max = std::max(grid_max, std::abs(l1(k, t) - l2(k, t)));
    }
    CHECK(sup >= grid_max - 1e-12);
    CHECK(sup <= grid_max + 12.0 / 2000 + 1e-12);
    CHECK(sup <= bottleneck(d1, d2) + 1e-12);
    CHECK(sup == doctest::Approx(sup_distance(l2, l1)));
  }
}

TEST_CASE("reconstruct_diagram round trips") {
  const PersistenceDiagram one({{0, 2, 0}});
  CHECK(reconstruct_diagram(from_diagram(one, 0)) == one);
  const PersistenceDiagram two({{0, 4, 0}, {2, 6, 0}});
  CHECK(reconstruct_diagram(from_diagram(two, 0)) == two);
  const PersistenceDiagram nested({{0, 10, 1}, {2, 4, 1}});
  CHECK(reconstruct_diagram(from_diagram(nested, 1), 1) == nested);

  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = generic_dyadic(rng, 1 + static_cast<std::size_t>(trial) % 25);
    REQUIRE(reconstruct_diagram(from_diagram(d, 0)) == d);
  }
}

TEST_CASE("reconstruct_diagram refuses what it cannot invert") {
  const Landscape a = from_diagram(PersistenceDiagram({{0, 2, 0}}), 0);
  const Landscape b = from_diagram(PersistenceDiagram({{1, 3, 0}}), 0);
  const std::vector<Landscape> ab{a, b};
  Landscape avg = average(ab);
  auto kind = [](const Landscape& l) {
    try {
      reconstruct_diagram(l);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidInput;
  };
  CHECK(kind(avg) == ErrorKind::NotInvertible);
  avg.is_average = false;
  CHECK(kind(avg) == ErrorKind::NotInvertible);
  Landscape flat;
  flat.levels.push_back({{0, 0}, {1, 1}, {2, 1}, {3, 0}});
  CHECK(kind(flat) == ErrorKind::NotInvertible);
}
