#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <tuple>
#include <vector>

#include "bugnav/oracle.hpp"
#include "bugnav/rng.hpp"

using namespace bugnav;

namespace {

// Uniform-cost search keeping (straight, diagonal) move counts, so the
// result is bit-comparable with the A* length.
double dijkstra(const PaddedGrid& g, CellIndex s, CellIndex t) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (g.blocked(s) || g.blocked(t)) return inf;
  const int w = g.width(), h = g.height();
  auto cost = [](int a, int b) { return a + b * std::numbers::sqrt2; };
  std::vector<std::pair<int, int>> best(static_cast<std::size_t>(w * h), {-1, -1});
  std::vector<char> done(static_cast<std::size_t>(w * h), 0);
  using Item = std::tuple<double, int, int, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
  q.push({0.0, 0, 0, s.y * w + s.x});
  best[static_cast<std::size_t>(s.y * w + s.x)] = {0, 0};
  while (!q.empty()) {
    auto [c, a, b, id] = q.top();
    q.pop();
    if (done[static_cast<std::size_t>(id)]) continue;
    done[static_cast<std::size_t>(id)] = 1;
    const int x = id % w, y = id / w;
    if (x == t.x && y == t.y) return g.cell_size() * cost(a, b);
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (!dx && !dy) continue;
        const CellIndex n{x + dx, y + dy};
        if (!g.contains(n) || g.blocked(n)) continue;
        const int na = a + (dx && dy ? 0 : 1), nb = b + (dx && dy ? 1 : 0);
        auto& cur = best[static_cast<std::size_t>(n.y * w + n.x)];
        if (cur.first >= 0 && cost(cur.first, cur.second) <= cost(na, nb)) continue;
        cur = {na, nb};
        q.push({cost(na, nb), na, nb, n.y * w + n.x});
      }
  }
  return inf;
}

PaddedGrid random_grid(Rng& rng, int n, double density) {
  PaddedGrid g(n, n, 1.0);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if (rng.uniform() < density) g.set_blocked({x, y}, true);
  return g;
}

int count_blocked(const PaddedGrid& g) {
  int n = 0;
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x) n += g.blocked({x, y});
  return n;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("open-grid fixtures") {
    PaddedGrid g(10, 10, 1.0);
    CHECK(astar_length(g, {0, 0}, {0, 5}) == 5.0);
    CHECK(astar_length(g, {0, 0}, {3, 3}) == 3.0 * std::numbers::sqrt2);
    CHECK(astar_length(g, {2, 2}, {2, 2}) == 0.0);
    CHECK(astar_length(g, {0, 0}, {4, 1}) == 3.0 + std::numbers::sqrt2);
  }

  TEST_CASE("blocked endpoints and sealed goals are unreachable") {
    PaddedGrid g(5, 5, 1.0);
    g.set_blocked({4, 4}, true);
    CHECK(std::isinf(astar_length(g, {0, 0}, {4, 4})));
    PaddedGrid wall(5, 5, 1.0);
    for (int y = 0; y < 5; ++y) wall.set_blocked({2, y}, true);
    CHECK(std::isinf(astar_length(wall, {0, 0}, {4, 0})));
    CHECK_THROWS_AS(astar_length(wall, {0, 0}, {5, 0}), std::out_of_range);
  }

  TEST_CASE("A* equals Dijkstra on random grids") {
    Rng rng(31);
    int reachable = 0;
    for (int trial = 0; trial < 300; ++trial) {
      PaddedGrid g = random_grid(rng, 20, 0.1 + 0.3 * rng.uniform());
      const CellIndex s{rng.uniform_int(0, 19), rng.uniform_int(0, 19)};
      const CellIndex t{rng.uniform_int(0, 19), rng.uniform_int(0, 19)};
      g.set_blocked(s, false);
      g.set_blocked(t, false);
      const double a = astar_length(g, s, t);
      const double d = dijkstra(g, s, t);
      CHECK(a == d);
      reachable += std::isfinite(d);
    }
    CHECK(reachable > 100);
  }

  TEST_CASE("length is symmetric") {
    Rng rng(32);
    for (int trial = 0; trial < 100; ++trial) {
      PaddedGrid g = random_grid(rng, 15, 0.25);
      const CellIndex s{rng.uniform_int(0, 14), rng.uniform_int(0, 14)};
      const CellIndex t{rng.uniform_int(0, 14), rng.uniform_int(0, 14)};
      g.set_blocked(s, false);
      g.set_blocked(t, false);
      CHECK(astar_length(g, s, t) == astar_length(g, t, s));
    }
  }

  TEST_CASE("adding obstacles never shortens the path") {
    Rng rng(33);
    for (int trial = 0; trial < 100; ++trial) {
      PaddedGrid g = random_grid(rng, 15, 0.15);
      const CellIndex s{0, 0}, t{14, 14};
      g.set_blocked(s, false);
      g.set_blocked(t, false);
      double prev = astar_length(g, s, t);
      for (int k = 0; k < 10; ++k) {
        const CellIndex c{rng.uniform_int(0, 14), rng.uniform_int(0, 14)};
        if (c == s || c == t) continue;
        g.set_blocked(c, true);
        const double now = astar_length(g, s, t);
        CHECK(now >= prev);
        prev = now;
      }
    }
  }

  TEST_CASE("padding inflates each wall cell by one sub-cell") {
    GridMap m(3, 3, 1.0);
    m.set(1, 1, Cell::Wall);
    const PaddedGrid p = pad(m, 4);
    CHECK(p.width() == 12);
    CHECK(p.cell_size() == 0.25);
    CHECK(count_blocked(p) == 36);  // 4x4 block grown to 6x6
    CHECK(p.blocked({3, 3}));
    CHECK_FALSE(p.blocked({2, 2}));
    CHECK(p.from_map({1, 1}) == CellIndex{6, 6});

    PaddedGrid one(5, 5, 1.0);
    one.set_blocked({0, 0}, true);
    CHECK(count_blocked(inflate(one)) == 4);  // clipped at the corner
  }

  TEST_CASE("oracle length in a walled room") {
    GridMap m(10, 4, 1.0);
    for (int x = 0; x < 10; ++x) m.set(x, 0, Cell::Wall), m.set(x, 3, Cell::Wall);
    for (int y = 0; y < 4; ++y) m.set(0, y, Cell::Wall), m.set(9, y, Cell::Wall);
    m.start = {1, 1};
    m.target = {8, 1};
    CHECK(oracle_length(m) == 7.0);
    m.start = {1, 2};
    CHECK(oracle_length(m) == doctest::Approx(6.0 + std::numbers::sqrt2));
  }

  TEST_CASE("padding that swallows an endpoint is reported") {
    GridMap m(3, 1, 1.0);
    m.set(1, 0, Cell::Wall);
    m.start = {0, 0};
    m.target = {2, 0};
    CHECK_NOTHROW(pad_checked(m, 4));
    CHECK_THROWS_AS(pad_checked(m, 2), PaddingDegenerate);
  }
}
