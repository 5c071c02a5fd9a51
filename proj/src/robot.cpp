#include "bugnav/robot.hpp"

namespace bugnav {

double SensorRig::beam_angle(int i) const {
  if (i == kLeftBeam) return -side_angle;
  if (i == kRightBeam) return side_angle;
  return -wedge_half_angle + 2.0 * wedge_half_angle * i / (kWedgeBeams - 1);
}

RobotState step(const RobotState& state, double v, double w, double dt, const SegmentIndex& walls,
                double body_radius) {
  RobotState next = state;
  next.v_cmd = v;
  next.w_cmd = w;
  next.blocked = false;
  next.true_pose.heading = normalize_angle(state.true_pose.heading + w * dt);
  if (v != 0.0) {
    const Vec2 candidate = state.true_pose.position + unit(next.true_pose.heading) * (v * dt);
    if (walls.nearest_within(candidate, body_radius) >= body_radius)
      next.true_pose.position = candidate;
    else
      next.blocked = true;
  }
  next.clock = state.clock + dt;
  return next;
}

SensorScan sense(const Pose& pose, const SensorRig& rig, const SegmentIndex& walls, bool contact) {
  SensorScan scan;
  scan.max_range = rig.max_range;
  scan.contact = contact;
  for (int i = 0; i < SensorRig::kBeams; ++i) {
    const double a = rig.beam_angle(i);
    scan.beam_angles[static_cast<std::size_t>(i)] = a;
    scan.ranges[static_cast<std::size_t>(i)] = walls.ray_cast(pose.position, pose.heading + a, rig.max_range);
  }
  return scan;
}

}  // namespace bugnav
