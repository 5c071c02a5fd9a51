#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bugnav/geometry.hpp"

namespace bugnav {

enum class Cell : std::uint8_t { Wall, Free, Corridor, Room };

struct CellIndex {
  int x = 0;
  int y = 0;
  constexpr bool operator==(const CellIndex&) const = default;
};

class GridMap {
 public:
  GridMap() = default;
  GridMap(int width, int height, double cell_size, Cell fill = Cell::Free);

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }

  bool contains(CellIndex c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  Cell at(CellIndex c) const { return cells_[index(c)]; }
  Cell at(int x, int y) const { return at(CellIndex{x, y}); }
  void set(CellIndex c, Cell v) { cells_[index(c)] = v; }
  void set(int x, int y, Cell v) { set(CellIndex{x, y}, v); }
  bool is_wall(CellIndex c) const { return at(c) == Cell::Wall; }

  Vec2 center(CellIndex c) const { return {(c.x + 0.5) * cell_size_, (c.y + 0.5) * cell_size_}; }
  std::size_t count(Cell v) const;

  CellIndex start;
  CellIndex target;

  bool operator==(const GridMap&) const = default;

 private:
  std::size_t index(CellIndex c) const {
    if (!contains(c)) throw std::out_of_range("cell outside grid");
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.x);
  }

  int width_ = 0;
  int height_ = 0;
  double cell_size_ = 1.0;
  std::vector<Cell> cells_;
};

struct GenParams {
  double p_str = 0.75;
  double t_cor = 0.4;
  double arena_size = 14.0;  // meters, square
  double cell_size = 1.0;
  int room_split_max = 5;   // cells
  int doors_per_side = 1;   // per room side that faces a corridor
  int target_clearance = 2; // cells of open floor kept around the target
  int max_attempts = 100;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct Environment {
  GridMap grid;
  std::vector<Segment> walls;
  Pose start_pose;
  Vec2 target;

  bool operator==(const Environment&) const = default;
};

class GenerationError : public std::runtime_error {
 public:
  GenerationError(std::uint64_t seed, const std::string& what)
      : std::runtime_error(what + " (seed " + std::to_string(seed) + ")"), seed_(seed) {}
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                           what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Corridor-walker indoor generator. Deterministic in `params.seed`.
Environment generate(const GenParams& params);

/// 4-connected flood fill over non-wall cells from start to target.
bool connectivity_check(const GridMap& grid);

/// Wall faces between wall and non-wall cells, collinear neighbours merged.
std::vector<Segment> grid_to_segments(const GridMap& grid);

/// Builds walls, start pose (facing the target) and target point from a grid.
Environment make_environment(GridMap grid);

std::string save_env(const Environment& env);
Environment load_env(std::string_view text);

}  // namespace bugnav
