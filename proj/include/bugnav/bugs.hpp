#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "bugnav/geometry.hpp"
#include "bugnav/rng.hpp"
#include "bugnav/robot.hpp"
#include "bugnav/wallfollow.hpp"

namespace bugnav {

enum class Algorithm { WF, Com, Com1, Bug2, Alg1, Alg2 };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::WF,   Algorithm::Com,  Algorithm::Com1,
                                               Algorithm::Bug2, Algorithm::Alg1, Algorithm::Alg2};

std::string_view to_string(Algorithm a);
/// Accepts wf, com, com1, bug2, alg1, alg2.
std::optional<Algorithm> parse_algorithm(std::string_view id);

bool uses_m_line(Algorithm a);
bool uses_hit_list(Algorithm a);
bool uses_hit_distance(Algorithm a);

enum class NavMode { Forward, WallFollowing, RotateToTarget, ChangeLocalDirection };

std::string_view to_string(NavMode m);

struct StoredHitPoint {
  Vec2 position;
  double stored_at = 0.0;  // sim clock when stored
  bool inside = true;      // estimate currently within the match radius
};

/// Decides whether the current estimate is at a previously stored hit-point.
class HitPointRecognizer {
 public:
  virtual ~HitPointRecognizer() = default;
  /// Called once per tick by controllers that keep a hit-point list.
  /// `wall_following` tells whether the answer will be acted upon.
  virtual bool recognize(std::vector<StoredHitPoint>& hit_points, Vec2 est_position, double clock,
                         bool wall_following) = 0;
};

struct NavState {
  NavMode mode = NavMode::Forward;
  int s_wf = 1;
  std::optional<double> d_hit_target;  // d(H,T) for the distance-gated leave rules
  std::optional<double> hit_distance;  // estimated distance at the current M-line hit
  std::vector<StoredHitPoint> hit_points;
  std::optional<Segment> m_line;
  Vec2 last_hit;  // estimated position at the latest hit
  WFState wf;
  double rotation_accumulator = 0.0;
  Vec2 prev_est;
  int leave_count = 0;
  int reversal_count = 0;
};

NavState initial_nav_state(Algorithm a, Vec2 start, Vec2 target);

struct TargetPercept {
  double bearing = 0.0;          // body frame, from the estimated pose
  double est_distance = 0.0;     // from the position estimate
  double compare_distance = 0.0; // d(x,T) for d(H,T) bookkeeping; DT channel when enabled
  bool path_free = false;
  Vec2 est_position;
  double clock = 0.0;
};

struct BugParams {
  WFParams wf;
  double hit_threshold = 0.5;   // front clearance that counts as hitting an obstacle
  double m_line_tol = 0.05;     // how close a step must pass to count as crossing the M-line
  double m_line_margin = 0.1;   // progress required over the hit-point before leaving on the M-line
  double free_cone = deg(5.0);  // half-width of the beam set that must be clear toward T
  double leave_separation = 0.25;  // distance from the latest hit-point before any leave
  double dt = 0.05;
};

/// Minimum finite front-wedge reading strictly below `threshold`, or body contact.
bool detect_hit(const SensorScan& scan, double threshold);

/// Bearing inside the wedge and every beam within `cone` of it clear to
/// min(est_distance, max_range).
bool path_to_target_free(const SensorScan& scan, double bearing, double est_distance, double cone = deg(5.0));

/// One control tick of the named controller.
Command bug_step(Algorithm a, NavState& nav, const SensorScan& scan, const TargetPercept& percept,
                 HitPointRecognizer* recognizer, const BugParams& params, Rng& ransac_rng);

}  // namespace bugnav
