#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bugnav/envgen.hpp"

namespace bugnav {

/// Occupancy grid for the shortest-path oracle. Each map cell is split into
/// subdivision x subdivision sub-cells; blocked sub-cells are inflated by one
/// sub-cell in the 8-neighbourhood.
class PaddedGrid {
 public:
  PaddedGrid() = default;
  PaddedGrid(int width, int height, double cell_size);

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }
  bool contains(CellIndex c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  bool blocked(CellIndex c) const { return blocked_[index(c)] != 0; }
  void set_blocked(CellIndex c, bool b) { blocked_[index(c)] = b ? 1 : 0; }

  /// Sub-cell holding the centre of map cell `c`.
  CellIndex from_map(CellIndex c) const;
  int subdivision() const { return subdivision_; }

 private:
  friend PaddedGrid pad(const GridMap& grid, int subdivision);
  std::size_t index(CellIndex c) const {
    if (!contains(c)) throw std::out_of_range("cell outside padded grid");
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.x);
  }

  int width_ = 0;
  int height_ = 0;
  double cell_size_ = 1.0;
  int subdivision_ = 1;
  std::vector<std::uint8_t> blocked_;
};

class PaddingDegenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Wall cells become blocked sub-cells, then every blocked sub-cell blocks
/// its 8 neighbours.
PaddedGrid pad(const GridMap& grid, int subdivision = 4);

/// Pads and checks that the start and target cells stay free.
PaddedGrid pad_checked(const GridMap& grid, int subdivision = 4);

/// Inflates an arbitrary blocked set by one cell in the 8-neighbourhood.
PaddedGrid inflate(const PaddedGrid& grid);

/// 8-connected A* with octile heuristic; straight moves cost cell_size,
/// diagonals cell_size*sqrt(2). Returns +inf when the goal is unreachable.
double astar_length(const PaddedGrid& grid, CellIndex start, CellIndex goal);

/// A* length between the start and target cells of a generated map.
double oracle_length(const GridMap& grid, int subdivision = 4);

}  // namespace bugnav
