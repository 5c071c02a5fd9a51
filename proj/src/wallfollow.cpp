#include "bugnav/wallfollow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bugnav {

std::string_view to_string(WFMode m) {
  switch (m) {
    case WFMode::RotateToAlignWall: return "rotate_to_align_wall";
    case WFMode::WallFollowingAndAligning: return "wall_following_and_aligning";
    case WFMode::RotateAroundCorner: return "rotate_around_corner";
  }
  return "?";
}

double perpendicular_distance(double r_s, double r_f, double beta) {
  if (!std::isfinite(r_s) || !std::isfinite(r_f)) throw std::invalid_argument("ranges must be finite");
  if (!(beta > 0.0 && beta < std::numbers::pi)) throw std::invalid_argument("beta must lie in (0, pi)");
  const double base2 = r_s * r_s + r_f * r_f - 2.0 * r_s * r_f * std::cos(beta);
  const double base = std::sqrt(std::max(0.0, base2));
  if (base < 1e-9) throw DegenerateTriangle();
  return r_s * r_f * std::sin(beta) / base;
}

WallFit ransac_wall_fit(std::span<const Vec2> points, int iterations, double threshold, Rng& rng) {
  const std::size_t n = points.size();
  if (n < 2) throw InsufficientPoints();

  Vec2 best_normal;
  double best_offset = 0.0;
  int best_count = 0;
  for (int it = 0; it < iterations; ++it) {
    const std::size_t i = rng.index(n);
    std::size_t j = rng.index(n - 1);
    if (j >= i) ++j;
    const Vec2 d = points[j] - points[i];
    const double len = d.norm();
    if (len < 1e-12) continue;
    const Vec2 normal{-d.y / len, d.x / len};
    const double offset = normal.dot(points[i]);
    int count = 0;
    for (const auto& p : points)
      if (std::abs(normal.dot(p) - offset) <= threshold) ++count;
    if (count > best_count) {
      best_count = count;
      best_normal = normal;
      best_offset = offset;
    }
  }
  if (best_count < 2) throw InsufficientPoints();

  // Total least squares on the inliers.
  Vec2 centroid;
  int m = 0;
  for (const auto& p : points)
    if (std::abs(best_normal.dot(p) - best_offset) <= threshold) {
      centroid += p;
      ++m;
    }
  centroid = centroid * (1.0 / m);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& p : points)
    if (std::abs(best_normal.dot(p) - best_offset) <= threshold) {
      const Vec2 q = p - centroid;
      sxx += q.x * q.x;
      syy += q.y * q.y;
      sxy += q.x * q.y;
    }
  double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  if (angle <= -std::numbers::pi / 2) angle += std::numbers::pi;
  if (angle > std::numbers::pi / 2) angle -= std::numbers::pi;
  const Vec2 normal{-std::sin(angle), std::cos(angle)};

  WallFit fit;
  fit.angle = angle;
  fit.distance = std::abs(normal.dot(centroid));
  fit.inliers = m;
  return fit;
}

std::vector<Vec2> wedge_points(const SensorScan& scan) {
  std::vector<Vec2> pts;
  pts.reserve(SensorRig::kWedgeBeams);
  for (int i = 0; i < SensorRig::kWedgeBeams; ++i) {
    const Range r = scan.ranges[static_cast<std::size_t>(i)];
    if (r.in_range()) pts.push_back(unit(scan.beam_angles[static_cast<std::size_t>(i)]) * r.meters());
  }
  return pts;
}

double front_clearance(const SensorScan& scan, const WFParams& params, Rng& rng) {
  const auto pts = wedge_points(scan);
  double clearance = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) clearance = std::min(clearance, p.x);
  if (pts.size() < 2) return clearance;

  const WallFit fit = ransac_wall_fit(pts, params.ransac_iterations, params.ransac_threshold, rng);
  if (std::abs(fit.angle) < std::numbers::pi / 4) return clearance;  // runs alongside, not across
  // Only a wall whose inliers reach across the swept path blocks it.
  const Vec2 normal{-std::sin(fit.angle), std::cos(fit.angle)};
  const double offset = normal.dot(pts.front()) >= 0.0 ? fit.distance : -fit.distance;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : pts) {
    if (std::abs(normal.dot(p) - offset) > params.ransac_threshold) continue;
    lo = std::min(lo, p.y);
    hi = std::max(hi, p.y);
  }
  if (lo <= params.path_half_width && hi >= -params.path_half_width) clearance = std::min(clearance, fit.distance);
  return clearance;
}

bool aligned_with_wall(Range r_s, Range r_f, const WFParams& params) {
  if (r_s.is_or() || r_f.is_or()) return false;
  return std::abs(r_s.meters() - r_f.meters() * std::cos(params.beta)) <= params.align_tol * r_f.meters();
}

namespace {

bool side_lost(Range r_s, const WFParams& p) { return r_s.is_or() || r_s.meters() > p.side_lost; }

// The front-side beam no longer sees the wall the side beam is on.
bool wall_ends_ahead(Range r_s, Range r_f, const WFParams& p) {
  if (r_f.is_or()) return true;
  if (r_s.is_or()) return false;
  return r_f.meters() * std::cos(p.beta) > p.wall_end_ratio * r_s.meters();
}

// Bang-bang heading correction while driving along the wall.
double align_turn(Range r_s, Range r_f, int s, const WFParams& p) {
  const double toward = s * p.c_w;
  if (r_s.is_or()) return wall_ends_ahead(r_s, r_f, p) ? 0.0 : toward;
  // With the wall ending ahead the two-beam triangle is meaningless; the
  // side beam alone still tells the distance.
  const bool ends = wall_ends_ahead(r_s, r_f, p);
  const double d = ends ? r_s.meters() : perpendicular_distance(r_s.meters(), r_f.meters(), p.beta);
  const double err = d - p.d_ref;
  // Drifting away from a wall whose far part is out of view shows only as a
  // growing side range, so the outer band is tight there.
  if (ends) return err > 0.0 ? toward : (err < -p.t_d ? -toward : 0.0);
  if (std::abs(err) > p.t_d) return err > 0.0 ? toward : -toward;
  if (aligned_with_wall(r_s, r_f, p)) return 0.0;
  return r_s.meters() > r_f.meters() * std::cos(p.beta) ? -toward : toward;
}

// Rotation can stop once the side beam faces a wall, either aligned with it
// or with the wall ending just ahead (a convex corner next to the robot).
bool ready_to_follow(Range r_s, Range r_f, const WFParams& p) {
  if (aligned_with_wall(r_s, r_f, p)) return true;
  return !side_lost(r_s, p) && wall_ends_ahead(r_s, r_f, p);
}

}  // namespace

Command wf_step(WFState& wf, const SensorScan& scan, const WFParams& p, Rng& rng) {
  const int s = wf.side;
  const Range r_s = scan.side(s);
  const Range r_f = scan.front_of_side(s);
  Command cmd;
  switch (wf.mode) {
    case WFMode::RotateToAlignWall: {
      cmd = {0.0, -s * p.c_w};
      if (ready_to_follow(r_s, r_f, p) && front_clearance(scan, p, rng) >= p.d_ref) {
        wf.mode = WFMode::WallFollowingAndAligning;
      } else if (r_f.is_or() && side_lost(r_s, p) && front_clearance(scan, p, rng) >= p.d_ref) {
        wf.mode = WFMode::RotateAroundCorner;
      }
      break;
    }
    case WFMode::WallFollowingAndAligning: {
      cmd = {p.c_v, align_turn(r_s, r_f, s, p)};
      if (scan.contact || front_clearance(scan, p, rng) < p.d_ref) {
        wf.mode = WFMode::RotateToAlignWall;
      } else if (wall_ends_ahead(r_s, r_f, p) && side_lost(r_s, p)) {
        wf.mode = WFMode::RotateAroundCorner;
      }
      break;
    }
    case WFMode::RotateAroundCorner: {
      cmd = {p.c_v, s * p.c_v / p.d_ref};
      if (scan.contact || front_clearance(scan, p, rng) < p.d_ref) {
        wf.mode = WFMode::RotateToAlignWall;
      } else if (aligned_with_wall(r_s, r_f, p)) {
        wf.mode = WFMode::WallFollowingAndAligning;
      }
      break;
    }
  }
  return cmd;
}

}  // namespace bugnav
