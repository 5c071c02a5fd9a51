#include "bugnav/envgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>

#include "bugnav/rng.hpp"
#include "bugnav/text.hpp"

namespace bugnav {

GridMap::GridMap(int width, int height, double cell_size, Cell fill)
    : width_(width), height_(height), cell_size_(cell_size) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("grid dimensions must be positive");
  if (!(cell_size > 0.0)) throw std::invalid_argument("cell size must be positive");
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

std::size_t GridMap::count(Cell v) const { return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), v)); }

void GenParams::validate() const {
  if (!(p_str > 0.0 && p_str < 1.0)) throw std::invalid_argument("p_str must lie in (0, 1)");
  if (!(t_cor > 0.0 && t_cor < 1.0)) throw std::invalid_argument("t_cor must lie in (0, 1)");
  if (!(cell_size > 0.0)) throw std::invalid_argument("cell_size must be positive");
  if (!(arena_size >= 5.0 * cell_size)) throw std::invalid_argument("arena_size must span at least 5 cells");
  if (room_split_max < 2) throw std::invalid_argument("room_split_max must be at least 2");
  if (doors_per_side < 1) throw std::invalid_argument("doors_per_side must be at least 1");
  if (target_clearance < 0) throw std::invalid_argument("target_clearance must be non-negative");
  if (max_attempts < 1) throw std::invalid_argument("max_attempts must be at least 1");
}

namespace {

constexpr std::array<CellIndex, 4> kDir4 = {{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};  // E S W N

CellIndex operator+(CellIndex a, CellIndex b) { return {a.x + b.x, a.y + b.y}; }

bool interior(const GridMap& g, CellIndex c) { return c.x >= 1 && c.y >= 1 && c.x <= g.width() - 2 && c.y <= g.height() - 2; }

// Labels 4-connected components of cells equal to `kind`; -1 elsewhere.
std::vector<std::vector<CellIndex>> components(const GridMap& g, Cell kind) {
  std::vector<int> label(static_cast<std::size_t>(g.width() * g.height()), -1);
  std::vector<std::vector<CellIndex>> out;
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      if (g.at(x, y) != kind || label[static_cast<std::size_t>(y * g.width() + x)] >= 0) continue;
      const int id = static_cast<int>(out.size());
      out.emplace_back();
      std::queue<CellIndex> q;
      q.push({x, y});
      label[static_cast<std::size_t>(y * g.width() + x)] = id;
      while (!q.empty()) {
        const CellIndex c = q.front();
        q.pop();
        out.back().push_back(c);
        for (auto d : kDir4) {
          const CellIndex n = c + d;
          if (!g.contains(n) || g.at(n) != kind) continue;
          auto& l = label[static_cast<std::size_t>(n.y * g.width() + n.x)];
          if (l >= 0) continue;
          l = id;
          q.push(n);
        }
      }
    }
  }
  return out;
}

struct Walker {
  CellIndex pos;
  int dir = 0;
};

void step_walker(Walker& w, const GridMap& g, double p_str, Rng& rng) {
  const double u = rng.uniform();
  int want = w.dir;
  if (u >= p_str) want = (u < p_str + (1.0 - p_str) / 2.0) ? (w.dir + 3) % 4 : (w.dir + 1) % 4;
  if (!interior(g, w.pos + kDir4[static_cast<std::size_t>(want)])) {
    std::vector<int> options;
    for (int d = 0; d < 4; ++d)
      if (d != (w.dir + 2) % 4 && d != want && interior(g, w.pos + kDir4[static_cast<std::size_t>(d)]))
        options.push_back(d);
    want = options.empty() ? (w.dir + 2) % 4 : options[rng.index(options.size())];
  }
  w.dir = want;
  w.pos = w.pos + kDir4[static_cast<std::size_t>(want)];
}

// Steps (a)-(c): two walkers carve corridors until the density threshold.
// Cells still marked Free afterwards are unassigned.
bool carve_corridors(GridMap& g, const GenParams& p, Rng& rng) {
  const double total = static_cast<double>(g.width() * g.height());
  std::array<Walker, 2> walkers{Walker{g.start, rng.uniform_int(0, 3)}, Walker{g.target, rng.uniform_int(0, 3)}};
  g.set(g.start, Cell::Corridor);
  g.set(g.target, Cell::Corridor);
  std::size_t corridors = g.count(Cell::Corridor);
  const int max_steps = 200 * g.width() * g.height();
  for (int s = 0; static_cast<double>(corridors) / total < p.t_cor; ++s) {
    if (s >= max_steps) return false;
    for (auto& w : walkers) {
      step_walker(w, g, p.p_str, rng);
      if (g.at(w.pos) != Cell::Corridor) {
        g.set(w.pos, Cell::Corridor);
        ++corridors;
      }
    }
  }
  GridMap only_corridors = g;
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x)
      if (g.at(x, y) != Cell::Corridor) only_corridors.set(x, y, Cell::Wall);
  return connectivity_check(only_corridors);
}

void clear_around_target(GridMap& g, int clearance) {
  for (int dy = -clearance; dy <= clearance; ++dy)
    for (int dx = -clearance; dx <= clearance; ++dx) {
      const CellIndex c{g.target.x + dx, g.target.y + dy};
      if (interior(g, c)) g.set(c, Cell::Corridor);
    }
}

// Step (d): walls on every unassigned cell touching a corridor, plus the rim.
void place_walls(GridMap& g) {
  GridMap out = g;
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      if (!interior(g, {x, y})) {
        out.set(x, y, Cell::Wall);
        continue;
      }
      if (g.at(x, y) != Cell::Free) continue;
      bool touches = false;
      for (int dy = -1; dy <= 1 && !touches; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if (g.at(x + dx, y + dy) == Cell::Corridor) touches = true;
      if (touches) out.set(x, y, Cell::Wall);
    }
  }
  g = std::move(out);
}

// Step (e): leftover regions become rooms, split by wall lines until small.
void split_rooms(GridMap& g, int split_max, Rng& rng) {
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x)
      if (g.at(x, y) == Cell::Free) g.set(x, y, Cell::Room);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& region : components(g, Cell::Room)) {
      int x0 = region[0].x, x1 = x0, y0 = region[0].y, y1 = y0;
      for (auto c : region) {
        x0 = std::min(x0, c.x);
        x1 = std::max(x1, c.x);
        y0 = std::min(y0, c.y);
        y1 = std::max(y1, c.y);
      }
      const int w = x1 - x0 + 1;
      const int h = y1 - y0 + 1;
      if (w <= split_max && h <= split_max) continue;
      const bool vertical = w >= h;
      const int lo = (vertical ? x0 : y0) + 2;
      const int hi = (vertical ? x1 : y1) - 2;
      const int cut = rng.uniform_int(lo, std::max(lo, hi));
      for (auto c : region)
        if ((vertical ? c.x : c.y) == cut) g.set(c, Cell::Wall);
      changed = true;
      break;  // regions changed, relabel
    }
  }
}

// Step (f): one door per room side that faces a corridor.
void punch_doors(GridMap& g, int doors_per_side, Rng& rng) {
  for (const auto& region : components(g, Cell::Room)) {
    std::array<std::vector<CellIndex>, 4> straight;
    std::vector<CellIndex> bent;
    for (auto r : region) {
      for (std::size_t d = 0; d < 4; ++d) {
        const CellIndex c = r + kDir4[d];
        if (!interior(g, c) || g.at(c) != Cell::Wall) continue;
        const CellIndex beyond = c + kDir4[d];
        if (g.contains(beyond) && g.at(beyond) == Cell::Corridor) {
          if (std::find(straight[d].begin(), straight[d].end(), c) == straight[d].end()) straight[d].push_back(c);
          continue;
        }
        for (auto e : kDir4) {
          const CellIndex n = c + e;
          if (g.contains(n) && g.at(n) == Cell::Corridor &&
              std::find(bent.begin(), bent.end(), c) == bent.end())
            bent.push_back(c);
        }
      }
    }
    bool any = false;
    for (auto& side : straight) {
      for (int k = 0; k < doors_per_side && !side.empty(); ++k) {
        const std::size_t i = rng.index(side.size());
        g.set(side[i], Cell::Free);
        side.erase(side.begin() + static_cast<std::ptrdiff_t>(i));
        any = true;
      }
    }
    if (any) continue;
    if (!bent.empty()) {
      g.set(bent[rng.index(bent.size())], Cell::Free);
      continue;
    }
    for (auto c : region) g.set(c, Cell::Wall);  // sealed pocket
  }
}

}  // namespace

bool connectivity_check(const GridMap& grid) {
  if (!grid.contains(grid.start) || !grid.contains(grid.target)) return false;
  if (grid.is_wall(grid.start) || grid.is_wall(grid.target)) return false;
  std::vector<char> seen(static_cast<std::size_t>(grid.width() * grid.height()), 0);
  std::vector<CellIndex> stack{grid.start};
  seen[static_cast<std::size_t>(grid.start.y * grid.width() + grid.start.x)] = 1;
  while (!stack.empty()) {
    const CellIndex c = stack.back();
    stack.pop_back();
    if (c == grid.target) return true;
    for (auto d : kDir4) {
      const CellIndex n = c + d;
      if (!grid.contains(n) || grid.is_wall(n)) continue;
      auto& s = seen[static_cast<std::size_t>(n.y * grid.width() + n.x)];
      if (s) continue;
      s = 1;
      stack.push_back(n);
    }
  }
  return false;
}

Environment generate(const GenParams& params) {
  params.validate();
  const int cells = static_cast<int>(std::lround(params.arena_size / params.cell_size));
  Rng rng(params.seed, Stream::Environment);
  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    GridMap g(cells, cells, params.cell_size, Cell::Free);
    const int hi = cells - 2 - params.target_clearance;
    const int lo = std::min(cells / 2, hi);
    if (hi < 1) throw GenerationError(params.seed, "arena too small for the target clearance");
    g.start = {1, 1};
    g.target = {rng.uniform_int(lo, hi), rng.uniform_int(lo, hi)};
    if (g.target == g.start) continue;
    if (!carve_corridors(g, params, rng)) continue;
    clear_around_target(g, params.target_clearance);
    place_walls(g);
    split_rooms(g, params.room_split_max, rng);
    punch_doors(g, params.doors_per_side, rng);
    if (!connectivity_check(g)) continue;
    return make_environment(std::move(g));
  }
  throw GenerationError(params.seed, "environment generation exceeded " + std::to_string(params.max_attempts) +
                                         " attempts");
}

std::vector<Segment> grid_to_segments(const GridMap& grid) {
  std::vector<Segment> out;
  const double cs = grid.cell_size();
  // Horizontal faces: the line y between rows y-1 and y.
  for (int y = 1; y < grid.height(); ++y) {
    int run_start = -1;
    for (int x = 0; x <= grid.width(); ++x) {
      const bool face = x < grid.width() && grid.is_wall({x, y - 1}) != grid.is_wall({x, y});
      if (face && run_start < 0) run_start = x;
      if (!face && run_start >= 0) {
        out.push_back({{run_start * cs, y * cs}, {x * cs, y * cs}});
        run_start = -1;
      }
    }
  }
  for (int x = 1; x < grid.width(); ++x) {
    int run_start = -1;
    for (int y = 0; y <= grid.height(); ++y) {
      const bool face = y < grid.height() && grid.is_wall({x - 1, y}) != grid.is_wall({x, y});
      if (face && run_start < 0) run_start = y;
      if (!face && run_start >= 0) {
        out.push_back({{x * cs, run_start * cs}, {x * cs, y * cs}});
        run_start = -1;
      }
    }
  }
  return out;
}

Environment make_environment(GridMap grid) {
  if (grid.start == grid.target) throw std::invalid_argument("start and target coincide");
  if (grid.is_wall(grid.start) || grid.is_wall(grid.target))
    throw std::invalid_argument("start and target must be open cells");
  Environment env;
  env.walls = grid_to_segments(grid);
  env.target = grid.center(grid.target);
  const Vec2 s = grid.center(grid.start);
  const Vec2 d = env.target - s;
  env.start_pose = Pose{s, normalize_angle(std::atan2(d.y, d.x))};
  env.grid = std::move(grid);
  return env;
}

namespace {
char cell_char(Cell c) {
  switch (c) {
    case Cell::Wall: return '#';
    case Cell::Free: return '.';
    case Cell::Corridor: return 'c';
    case Cell::Room: return 'r';
  }
  return '?';
}
}  // namespace

std::string save_env(const Environment& env) {
  const GridMap& g = env.grid;
  std::string out = "bugnav-env v1 " + std::to_string(g.width()) + " " + std::to_string(g.height()) + " " +
                    format_double(g.cell_size()) + "\n";
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      const CellIndex c{x, y};
      out += c == g.start ? 'S' : c == g.target ? 'T' : cell_char(g.at(c));
    }
    out += '\n';
  }
  return out;
}

Environment load_env(std::string_view text) {
  const auto lines = split(text, '\n');
  if (lines.empty() || lines[0].empty()) throw ParseError(1, 1, "missing header");
  const auto header = split(lines[0], ' ');
  if (header.size() != 5 || header[0] != "bugnav-env" || header[1] != "v1")
    throw ParseError(1, 1, "expected header 'bugnav-env v1 <width> <height> <cell_size>'");
  const auto w = parse_int(header[2]);
  const auto h = parse_int(header[3]);
  const auto cs = parse_double(header[4]);
  const int col_w = static_cast<int>(header[0].size() + header[1].size() + 3);
  if (!w || *w < 3 || *w > 100000) throw ParseError(1, col_w, "bad width");
  if (!h || *h < 3 || *h > 100000) throw ParseError(1, col_w + static_cast<int>(header[2].size()) + 1, "bad height");
  if (!cs || !(*cs > 0.0))
    throw ParseError(1, col_w + static_cast<int>(header[2].size() + header[3].size()) + 2, "bad cell size");

  const int width = static_cast<int>(*w);
  const int height = static_cast<int>(*h);
  // Rows, then exactly one empty piece after the final LF.
  if (lines.size() != static_cast<std::size_t>(height) + 2 || !lines.back().empty()) {
    const int line = std::min(static_cast<int>(lines.size()), height + 2);
    throw ParseError(line, 1, "expected " + std::to_string(height) + " rows terminated by LF");
  }
  GridMap g(width, height, *cs, Cell::Free);
  bool have_s = false;
  bool have_t = false;
  for (int y = 0; y < height; ++y) {
    const auto row = lines[static_cast<std::size_t>(y) + 1];
    const int line = y + 2;
    if (row.size() != static_cast<std::size_t>(width))
      throw ParseError(line, static_cast<int>(std::min(row.size(), static_cast<std::size_t>(width))) + 1,
                       "row must have exactly " + std::to_string(width) + " cells");
    for (int x = 0; x < width; ++x) {
      const char ch = row[static_cast<std::size_t>(x)];
      Cell c;
      switch (ch) {
        case '#': c = Cell::Wall; break;
        case '.': c = Cell::Free; break;
        case 'c': c = Cell::Corridor; break;
        case 'r': c = Cell::Room; break;
        case 'S':
        case 'T': {
          bool& seen = ch == 'S' ? have_s : have_t;
          if (seen) throw ParseError(line, x + 1, std::string("duplicate '") + ch + "'");
          seen = true;
          (ch == 'S' ? g.start : g.target) = {x, y};
          c = Cell::Corridor;
          break;
        }
        default: throw ParseError(line, x + 1, std::string("unexpected character '") + ch + "'");
      }
      const bool rim = x == 0 || y == 0 || x == width - 1 || y == height - 1;
      if (rim && c != Cell::Wall) throw ParseError(line, x + 1, "outer boundary must be wall");
      g.set(x, y, c);
    }
  }
  if (!have_s) throw ParseError(2, 1, "no start cell 'S'");
  if (!have_t) throw ParseError(2, 1, "no target cell 'T'");
  return make_environment(std::move(g));
}

}  // namespace bugnav
