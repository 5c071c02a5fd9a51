#include "bugnav/bugs.hpp"

#include <cmath>
#include <limits>

namespace bugnav {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::WF: return "wf";
    case Algorithm::Com: return "com";
    case Algorithm::Com1: return "com1";
    case Algorithm::Bug2: return "bug2";
    case Algorithm::Alg1: return "alg1";
    case Algorithm::Alg2: return "alg2";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view id) {
  for (Algorithm a : kAllAlgorithms)
    if (to_string(a) == id) return a;
  return std::nullopt;
}

bool uses_m_line(Algorithm a) { return a == Algorithm::Bug2 || a == Algorithm::Alg1; }
bool uses_hit_list(Algorithm a) { return a == Algorithm::Alg1 || a == Algorithm::Alg2; }
bool uses_hit_distance(Algorithm a) { return a == Algorithm::Com1 || a == Algorithm::Alg2; }

std::string_view to_string(NavMode m) {
  switch (m) {
    case NavMode::Forward: return "forward";
    case NavMode::WallFollowing: return "wall_following";
    case NavMode::RotateToTarget: return "rotate_to_target";
    case NavMode::ChangeLocalDirection: return "change_local_direction";
  }
  return "?";
}

NavState initial_nav_state(Algorithm a, Vec2 start, Vec2 target) {
  NavState nav;
  if (uses_m_line(a)) nav.m_line = Segment{start, target};
  nav.prev_est = start;
  return nav;
}

bool detect_hit(const SensorScan& scan, double threshold) {
  if (scan.contact) return true;
  for (int i = 0; i < SensorRig::kWedgeBeams; ++i) {
    const Range r = scan.ranges[static_cast<std::size_t>(i)];
    if (r.in_range() && r.meters() < threshold) return true;
  }
  return false;
}

bool path_to_target_free(const SensorScan& scan, double bearing, double est_distance, double cone) {
  const double lo = scan.beam_angles[0];
  const double hi = scan.beam_angles[SensorRig::kWedgeBeams - 1];
  if (bearing < lo || bearing > hi) return false;
  const double needed = std::min(est_distance, scan.max_range);
  for (int i = 0; i < SensorRig::kWedgeBeams; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (scan.ranges[k].is_or()) continue;
    if (std::abs(scan.beam_angles[k] - bearing) <= cone && scan.ranges[k].meters() < needed) return false;
  }
  return true;
}

namespace {

bool may_leave(Algorithm a, const NavState& nav, const TargetPercept& percept, const BugParams& p) {
  switch (a) {
    case Algorithm::WF:
      return false;
    case Algorithm::Com:
      return percept.path_free;
    case Algorithm::Com1:
    case Algorithm::Alg2:
      return percept.path_free && nav.d_hit_target && percept.compare_distance < *nav.d_hit_target;
    case Algorithm::Bug2:
    case Algorithm::Alg1:
      return nav.m_line && nav.hit_distance &&
             crosses_m_line(nav.prev_est, percept.est_position, *nav.m_line, p.m_line_tol) &&
             percept.est_distance < *nav.hit_distance - p.m_line_margin;
  }
  return false;
}

}  // namespace

Command bug_step(Algorithm a, NavState& nav, const SensorScan& scan, const TargetPercept& percept,
                 HitPointRecognizer* recognizer, const BugParams& p, Rng& ransac_rng) {
  bool recognized = false;
  if (recognizer && uses_hit_list(a))
    recognized = recognizer->recognize(nav.hit_points, percept.est_position, percept.clock,
                                       nav.mode == NavMode::WallFollowing);

  Command cmd;
  switch (nav.mode) {
    case NavMode::Forward: {
      cmd = {p.wf.c_v, 0.0};
      if (detect_hit(scan, p.hit_threshold)) {
        if (a == Algorithm::Alg2) nav.s_wf = 1;
        if (uses_hit_distance(a)) nav.d_hit_target = percept.compare_distance;
        if (uses_m_line(a)) nav.hit_distance = percept.est_distance;
        nav.last_hit = percept.est_position;
        if (uses_hit_list(a)) nav.hit_points.push_back({percept.est_position, percept.clock, true});
        nav.wf = WFState{WFMode::RotateToAlignWall, nav.s_wf};
        nav.mode = NavMode::WallFollowing;
      }
      break;
    }
    case NavMode::WallFollowing: {
      nav.wf.side = nav.s_wf;
      cmd = wf_step(nav.wf, scan, p.wf, ransac_rng);
      // A leave right at the hit-point only re-hits the same spot.
      const bool moved_on = distance(percept.est_position, nav.last_hit) >= p.leave_separation;
      if (moved_on && may_leave(a, nav, percept, p)) {
        nav.mode = NavMode::RotateToTarget;
        ++nav.leave_count;
      } else if (recognized) {
        nav.mode = NavMode::ChangeLocalDirection;
        nav.rotation_accumulator = 0.0;
        ++nav.reversal_count;
      }
      break;
    }
    case NavMode::RotateToTarget: {
      // The turn rate moves the heading c_w*dt per tick, so half a step is
      // the tightest tolerance that always terminates.
      if (std::abs(percept.bearing) <= 0.5 * p.wf.c_w * p.dt + 1e-12) {
        cmd = {p.wf.c_v, 0.0};
        nav.mode = NavMode::Forward;
      } else {
        cmd = {0.0, percept.bearing > 0.0 ? p.wf.c_w : -p.wf.c_w};
      }
      break;
    }
    case NavMode::ChangeLocalDirection: {
      cmd = {0.0, p.wf.c_w};
      nav.s_wf = -1;
      nav.rotation_accumulator += p.wf.c_w * p.dt;
      if (nav.rotation_accumulator >= std::numbers::pi - 1e-9) {
        nav.wf = WFState{WFMode::RotateToAlignWall, nav.s_wf};
        nav.mode = NavMode::WallFollowing;
      }
      break;
    }
  }
  nav.prev_est = percept.est_position;
  return cmd;
}

}  // namespace bugnav
