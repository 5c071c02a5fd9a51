#include "bugnav/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace bugnav {

PaddedGrid::PaddedGrid(int width, int height, double cell_size)
    : width_(width), height_(height), cell_size_(cell_size),
      blocked_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("padded grid must be non-empty");
}

CellIndex PaddedGrid::from_map(CellIndex c) const {
  return {c.x * subdivision_ + subdivision_ / 2, c.y * subdivision_ + subdivision_ / 2};
}

PaddedGrid inflate(const PaddedGrid& grid) {
  PaddedGrid out = grid;
  for (int y = 0; y < grid.height(); ++y)
    for (int x = 0; x < grid.width(); ++x) {
      if (!grid.blocked({x, y})) continue;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const CellIndex n{x + dx, y + dy};
          if (out.contains(n)) out.set_blocked(n, true);
        }
    }
  return out;
}

PaddedGrid pad(const GridMap& grid, int subdivision) {
  if (subdivision < 1) throw std::invalid_argument("subdivision must be >= 1");
  PaddedGrid raw(grid.width() * subdivision, grid.height() * subdivision, grid.cell_size() / subdivision);
  for (int y = 0; y < grid.height(); ++y)
    for (int x = 0; x < grid.width(); ++x) {
      if (!grid.is_wall({x, y})) continue;
      for (int sy = 0; sy < subdivision; ++sy)
        for (int sx = 0; sx < subdivision; ++sx) raw.set_blocked({x * subdivision + sx, y * subdivision + sy}, true);
    }
  PaddedGrid out = inflate(raw);
  out.subdivision_ = subdivision;
  return out;
}

PaddedGrid pad_checked(const GridMap& grid, int subdivision) {
  PaddedGrid out = pad(grid, subdivision);
  if (out.blocked(out.from_map(grid.start)) || out.blocked(out.from_map(grid.target)))
    throw PaddingDegenerate("start or target blocked after padding");
  return out;
}

double astar_length(const PaddedGrid& grid, CellIndex start, CellIndex goal) {
  if (!grid.contains(start) || !grid.contains(goal)) throw std::out_of_range("endpoint outside grid");
  if (grid.blocked(start) || grid.blocked(goal)) return std::numeric_limits<double>::infinity();

  constexpr double kSqrt2 = std::numbers::sqrt2;
  const int w = grid.width();
  const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(grid.height());
  // Path cost is tracked as (straight, diagonal) move counts so the returned
  // length does not depend on summation order.
  std::vector<int> straight(n, -1), diag(n, -1);
  std::vector<std::uint8_t> closed(n, 0);
  auto id = [w](CellIndex c) { return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c.x); };
  auto cost = [](int s, int d) { return s + d * kSqrt2; };
  auto heuristic = [&](CellIndex c) {
    const int dx = std::abs(c.x - goal.x), dy = std::abs(c.y - goal.y);
    return std::max(dx, dy) - std::min(dx, dy) + std::min(dx, dy) * kSqrt2;
  };

  struct Node {
    double f;
    double g;
    CellIndex c;
  };
  auto worse = [](const Node& a, const Node& b) {
    if (a.f != b.f) return a.f > b.f;
    return a.g < b.g;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
  straight[id(start)] = 0;
  diag[id(start)] = 0;
  open.push({heuristic(start), 0.0, start});
  while (!open.empty()) {
    const Node cur = open.top();
    open.pop();
    const std::size_t ci = id(cur.c);
    if (closed[ci]) continue;
    closed[ci] = 1;
    if (cur.c == goal) return grid.cell_size() * cost(straight[ci], diag[ci]);
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const CellIndex nb{cur.c.x + dx, cur.c.y + dy};
        if (!grid.contains(nb) || grid.blocked(nb)) continue;
        const std::size_t ni = id(nb);
        if (closed[ni]) continue;
        const bool is_diag = dx != 0 && dy != 0;
        const int s = straight[ci] + (is_diag ? 0 : 1);
        const int d = diag[ci] + (is_diag ? 1 : 0);
        const double g = cost(s, d);
        if (straight[ni] >= 0 && cost(straight[ni], diag[ni]) <= g) continue;
        straight[ni] = s;
        diag[ni] = d;
        open.push({g + heuristic(nb), g, nb});
      }
  }
  return std::numeric_limits<double>::infinity();
}

double oracle_length(const GridMap& grid, int subdivision) {
  const PaddedGrid padded = pad_checked(grid, subdivision);
  return astar_length(padded, padded.from_map(grid.start), padded.from_map(grid.target));
}

}  // namespace bugnav
