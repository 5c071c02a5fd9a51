#pragma once

#include <array>
#include <numbers>

#include "bugnav/geometry.hpp"

namespace bugnav {

inline constexpr double deg(double d) { return d * std::numbers::pi / 180.0; }

/// 20-beam front wedge plus one beam out of each side.
struct SensorRig {
  static constexpr int kWedgeBeams = 20;
  static constexpr int kBeams = kWedgeBeams + 2;
  static constexpr int kLeftBeam = kWedgeBeams;       // -90 deg
  static constexpr int kRightBeam = kWedgeBeams + 1;  // +90 deg

  double wedge_half_angle = deg(30.0);
  double side_angle = deg(90.0);
  double max_range = 2.0;

  double beam_angle(int i) const;
  /// Angle between a side beam and the nearest wedge beam.
  double beta() const { return side_angle - wedge_half_angle; }
};

struct SensorScan {
  std::array<Range, SensorRig::kBeams> ranges{};
  std::array<double, SensorRig::kBeams> beam_angles{};
  double max_range = 2.0;
  bool contact = false;  // last commanded translation was blocked by a wall

  /// Side beam for a wall-following side: +1 right, -1 left.
  Range side(int s) const { return ranges[s > 0 ? SensorRig::kRightBeam : SensorRig::kLeftBeam]; }
  int side_index(int s) const { return s > 0 ? SensorRig::kRightBeam : SensorRig::kLeftBeam; }
  /// Wedge beam nearest to the side beam.
  Range front_of_side(int s) const { return ranges[s > 0 ? SensorRig::kWedgeBeams - 1 : 0]; }
  int front_of_side_index(int s) const { return s > 0 ? SensorRig::kWedgeBeams - 1 : 0; }
};

struct RobotParams {
  double body_radius = 0.17;
  double dt = 0.05;
  double c_v = 0.5;
  double c_w = 1.0;
};

struct RobotState {
  Pose true_pose;
  Vec2 est_position;
  double est_heading = 0.0;
  double v_cmd = 0.0;
  double w_cmd = 0.0;
  double clock = 0.0;
  bool blocked = false;  // translation of the last step was cancelled
};

/// Unicycle update: heading first, then translation along the new heading.
/// Translation is dropped when it would bring the body within `body_radius`
/// of a wall.
RobotState step(const RobotState& state, double v, double w, double dt, const SegmentIndex& walls,
                double body_radius);

SensorScan sense(const Pose& pose, const SensorRig& rig, const SegmentIndex& walls, bool contact = false);

/// Dead reckoning: one noisy per-tick displacement added to the estimate.
inline Vec2 integrate_odometry(Vec2 est, Vec2 measured_displacement) { return est + measured_displacement; }

}  // namespace bugnav
