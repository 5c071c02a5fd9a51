#include "bugnav/geometry.hpp"

#include <algorithm>
#include <limits>

namespace bugnav {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double normalize_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = a - two_pi * std::floor((a + std::numbers::pi) / two_pi);
  // floor rounding can land exactly on +pi
  if (r >= std::numbers::pi) r -= two_pi;
  if (r < -std::numbers::pi) r = -std::numbers::pi;
  return r;
}

double ray_segment_hit(Vec2 origin, Vec2 dir, const Segment& s) {
  const Vec2 e = s.b - s.a;
  const double denom = dir.cross(e);
  if (denom == 0.0) return -1.0;  // parallel, grazing counts as a miss
  const Vec2 w = s.a - origin;
  const double t = w.cross(e) / denom;
  const double u = w.cross(dir) / denom;
  if (t < 0.0 || u < 0.0 || u > 1.0) return -1.0;
  return t;
}

Range ray_cast(Vec2 origin, double direction, std::span<const Segment> walls, double max_range) {
  const Vec2 dir = unit(direction);
  double best = kInf;
  for (const auto& s : walls) {
    const double t = ray_segment_hit(origin, dir, s);
    if (t >= 0.0 && t < best) best = t;
  }
  return best < max_range ? Range::hit(best) : Range::out_of_range();
}

double segment_distance(Vec2 p, const Segment& s) {
  const Vec2 e = s.b - s.a;
  const double len2 = e.dot(e);
  double t = len2 > 0.0 ? (p - s.a).dot(e) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, s.a + e * t);
}

namespace {
int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = (b - a).cross(c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Segment& s, const Segment& t) {
  const int o1 = orientation(s.a, s.b, t.a);
  const int o2 = orientation(s.a, s.b, t.b);
  const int o3 = orientation(t.a, t.b, s.a);
  const int o4 = orientation(t.a, t.b, s.b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(s.a, s.b, t.a)) return true;
  if (o2 == 0 && on_segment(s.a, s.b, t.b)) return true;
  if (o3 == 0 && on_segment(t.a, t.b, s.a)) return true;
  if (o4 == 0 && on_segment(t.a, t.b, s.b)) return true;
  return false;
}
}  // namespace

double segment_segment_distance(const Segment& s, const Segment& t) {
  if (segments_intersect(s, t)) return 0.0;
  return std::min({segment_distance(s.a, t), segment_distance(s.b, t), segment_distance(t.a, s),
                   segment_distance(t.b, s)});
}

bool crosses_m_line(Vec2 prev, Vec2 cur, const Segment& m_line, double tol) {
  return segment_segment_distance(Segment{prev, cur}, m_line) <= tol;
}

SegmentIndex::SegmentIndex(std::vector<Segment> walls, double bucket_size)
    : walls_(std::move(walls)), bucket_size_(bucket_size) {
  if (bucket_size_ <= 0.0) throw std::invalid_argument("bucket size must be positive");
  if (walls_.empty()) return;
  Vec2 lo{kInf, kInf};
  Vec2 hi{-kInf, -kInf};
  for (const auto& s : walls_) {
    lo.x = std::min({lo.x, s.a.x, s.b.x});
    lo.y = std::min({lo.y, s.a.y, s.b.y});
    hi.x = std::max({hi.x, s.a.x, s.b.x});
    hi.y = std::max({hi.y, s.a.y, s.b.y});
  }
  origin_ = {lo.x - bucket_size_, lo.y - bucket_size_};
  nx_ = static_cast<int>(std::floor((hi.x - origin_.x) / bucket_size_)) + 2;
  ny_ = static_cast<int>(std::floor((hi.y - origin_.y) / bucket_size_)) + 2;

  constexpr double pad = 1e-9;
  auto range_of = [&](const Segment& s, int& x0, int& x1, int& y0, int& y1) {
    x0 = static_cast<int>(std::floor((std::min(s.a.x, s.b.x) - pad - origin_.x) / bucket_size_));
    x1 = static_cast<int>(std::floor((std::max(s.a.x, s.b.x) + pad - origin_.x) / bucket_size_));
    y0 = static_cast<int>(std::floor((std::min(s.a.y, s.b.y) - pad - origin_.y) / bucket_size_));
    y1 = static_cast<int>(std::floor((std::max(s.a.y, s.b.y) + pad - origin_.y) / bucket_size_));
  };
  std::vector<int> counts(static_cast<size_t>(nx_ * ny_), 0);
  for (const auto& s : walls_) {
    int x0, x1, y0, y1;
    range_of(s, x0, x1, y0, y1);
    for (int by = y0; by <= y1; ++by)
      for (int bx = x0; bx <= x1; ++bx) ++counts[static_cast<size_t>(by * nx_ + bx)];
  }
  offsets_.assign(counts.size() + 1, 0);
  for (size_t i = 0; i < counts.size(); ++i) offsets_[i + 1] = offsets_[i] + counts[i];
  items_.resize(static_cast<size_t>(offsets_.back()));
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (int i = 0; i < static_cast<int>(walls_.size()); ++i) {
    int x0, x1, y0, y1;
    range_of(walls_[static_cast<size_t>(i)], x0, x1, y0, y1);
    for (int by = y0; by <= y1; ++by)
      for (int bx = x0; bx <= x1; ++bx)
        items_[static_cast<size_t>(fill[static_cast<size_t>(by * nx_ + bx)]++)] = i;
  }
}

std::span<const int> SegmentIndex::bucket(int bx, int by) const {
  const auto i = static_cast<size_t>(by * nx_ + bx);
  return {items_.data() + offsets_[i], static_cast<size_t>(offsets_[i + 1] - offsets_[i])};
}

Range SegmentIndex::ray_cast(Vec2 origin, double direction, double max_range) const {
  if (walls_.empty()) return Range::out_of_range();
  const Vec2 dir = unit(direction);
  const Vec2 local = (origin - origin_) * (1.0 / bucket_size_);
  int bx = static_cast<int>(std::floor(local.x));
  int by = static_cast<int>(std::floor(local.y));
  // The grid is a padded box around every wall, so a ray that leaves it is
  // done; one that starts outside is rare enough for the slow path.
  if (bx < 0 || by < 0 || bx >= nx_ || by >= ny_) return bugnav::ray_cast(origin, direction, walls_, max_range);

  // Amanatides-Woo traversal; t values are in world meters.
  const int step_x = dir.x > 0.0 ? 1 : -1;
  const int step_y = dir.y > 0.0 ? 1 : -1;
  const double delta_x = dir.x != 0.0 ? bucket_size_ / std::abs(dir.x) : kInf;
  const double delta_y = dir.y != 0.0 ? bucket_size_ / std::abs(dir.y) : kInf;
  double next_x = kInf;
  double next_y = kInf;
  if (dir.x != 0.0) {
    const double edge = dir.x > 0.0 ? std::floor(local.x) + 1.0 : std::floor(local.x);
    next_x = (edge - local.x) * bucket_size_ / dir.x;
  }
  if (dir.y != 0.0) {
    const double edge = dir.y > 0.0 ? std::floor(local.y) + 1.0 : std::floor(local.y);
    next_y = (edge - local.y) * bucket_size_ / dir.y;
  }

  double best = kInf;
  double t_enter = 0.0;
  while (t_enter < max_range && t_enter <= best) {
    if (bx < 0 || by < 0 || bx >= nx_ || by >= ny_) break;
    for (int i : bucket(bx, by)) {
      const double t = ray_segment_hit(origin, dir, walls_[static_cast<size_t>(i)]);
      if (t >= 0.0 && t < best) best = t;
    }
    const double t_exit = std::min(next_x, next_y);
    if (best <= t_exit) break;
    t_enter = t_exit;
    if (next_x < next_y) {
      next_x += delta_x;
      bx += step_x;
    } else {
      next_y += delta_y;
      by += step_y;
    }
  }
  return best < max_range ? Range::hit(best) : Range::out_of_range();
}

double SegmentIndex::nearest_within(Vec2 p, double radius) const {
  double best = kInf;
  if (walls_.empty()) return best;
  const int x0 = std::max(0, static_cast<int>(std::floor((p.x - radius - origin_.x) / bucket_size_)));
  const int x1 =
      std::min(nx_ - 1, static_cast<int>(std::floor((p.x + radius - origin_.x) / bucket_size_)));
  const int y0 = std::max(0, static_cast<int>(std::floor((p.y - radius - origin_.y) / bucket_size_)));
  const int y1 =
      std::min(ny_ - 1, static_cast<int>(std::floor((p.y + radius - origin_.y) / bucket_size_)));
  for (int by = y0; by <= y1; ++by)
    for (int bx = x0; bx <= x1; ++bx)
      for (int i : bucket(bx, by)) best = std::min(best, segment_distance(p, walls_[static_cast<size_t>(i)]));
  return best <= radius ? best : kInf;
}

}  // namespace bugnav
