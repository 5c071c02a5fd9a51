#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace bugnav {

// World frame: x grows east, y grows south (grid rows). Angles are measured
// from +x toward +y, so a positive angle is a clockwise turn on screen and a
// body-frame angle of +90 deg points out of the robot's right side.

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  constexpr double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Wraps an angle into [-pi, pi).
double normalize_angle(double a);

struct Pose {
  Vec2 position;
  double heading = 0.0;  // radians, [-pi, pi)

  constexpr bool operator==(const Pose&) const = default;
};

struct Segment {
  Vec2 a;
  Vec2 b;

  constexpr bool operator==(const Segment&) const = default;
};

/// A single-beam range reading. Default-constructed readings are out of
/// range (OR); the distance of an OR reading is not a number anyone may use.
class Range {
 public:
  constexpr Range() = default;
  static constexpr Range out_of_range() { return Range{}; }
  static constexpr Range hit(double meters) { return Range{meters, true}; }

  constexpr bool in_range() const { return valid_; }
  constexpr bool is_or() const { return !valid_; }
  double meters() const {
    if (!valid_) throw std::logic_error("out-of-range reading has no distance");
    return meters_;
  }
  /// Distance, or `fallback` when OR.
  constexpr double value_or(double fallback) const { return valid_ ? meters_ : fallback; }

  constexpr bool operator==(const Range&) const = default;

 private:
  constexpr Range(double m, bool v) : meters_(m), valid_(v) {}
  double meters_ = 0.0;
  bool valid_ = false;
};

/// Distance along the ray to `s`, or a negative value when it misses.
double ray_segment_hit(Vec2 origin, Vec2 dir, const Segment& s);

/// Nearest wall along the ray, brute force over every segment.
Range ray_cast(Vec2 origin, double direction, std::span<const Segment> walls, double max_range);

double segment_distance(Vec2 p, const Segment& s);
double segment_segment_distance(const Segment& s, const Segment& t);

/// True when the step prev->cur touches the M-line or passes within `tol`
/// of it.
bool crosses_m_line(Vec2 prev, Vec2 cur, const Segment& m_line, double tol);

/// Uniform bucket grid over a fixed wall set, for fast ray casts and
/// proximity queries. Results are identical to the brute-force functions.
class SegmentIndex {
 public:
  SegmentIndex() = default;
  SegmentIndex(std::vector<Segment> walls, double bucket_size);

  const std::vector<Segment>& walls() const { return walls_; }

  Range ray_cast(Vec2 origin, double direction, double max_range) const;
  /// Minimum distance from p to any wall, searched within `radius`;
  /// returns +inf when nothing is that close.
  double nearest_within(Vec2 p, double radius) const;

 private:
  std::span<const int> bucket(int bx, int by) const;

  std::vector<Segment> walls_;
  double bucket_size_ = 1.0;
  Vec2 origin_;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<int> offsets_;  // CSR layout, nx_*ny_ + 1 entries
  std::vector<int> items_;
};

}  // namespace bugnav
