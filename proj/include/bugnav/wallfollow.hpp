#pragma once

#include <span>
#include <stdexcept>
#include <string_view>

#include "bugnav/geometry.hpp"
#include "bugnav/rng.hpp"
#include "bugnav/robot.hpp"

namespace bugnav {

enum class WFMode { RotateToAlignWall, WallFollowingAndAligning, RotateAroundCorner };

std::string_view to_string(WFMode m);

struct WFState {
  WFMode mode = WFMode::RotateToAlignWall;
  int side = 1;  // +1 keeps the wall on the right, -1 on the left
};

struct WFParams {
  double d_ref = 0.5;
  double t_d = 0.10;
  double c_v = 0.5;
  double c_w = 1.0;
  double beta = deg(60.0);
  double align_tol = 0.05;  // relative to r_f
  double path_half_width = 0.17;  // lateral extent that counts as "in front"
  double wall_end_ratio = 1.2;    // r_f*cos(beta)/r_s above this: the wall ends ahead
  double side_lost = 1.0;         // r_s beyond this (or OR): no wall beside the robot
  int ransac_iterations = 50;
  double ransac_threshold = 0.05;
};

struct Command {
  double v = 0.0;
  double w = 0.0;
  constexpr bool operator==(const Command&) const = default;
};

class DegenerateTriangle : public std::domain_error {
 public:
  DegenerateTriangle() : std::domain_error("degenerate range triangle") {}
};

class InsufficientPoints : public std::invalid_argument {
 public:
  InsufficientPoints() : std::invalid_argument("line fit needs at least two points") {}
};

/// Height of the triangle spanned by two beams of lengths r_s and r_f that
/// are `beta` apart: the distance from the robot to the wall through both
/// beam endpoints.
double perpendicular_distance(double r_s, double r_f, double beta);

struct WallFit {
  double angle = 0.0;     // wall direction in the body frame, (-pi/2, pi/2]
  double distance = 0.0;  // perpendicular distance from the robot origin
  int inliers = 0;
};

/// RANSAC line fit over body-frame beam endpoints, refined by a total least
/// squares fit on the winning inlier set.
WallFit ransac_wall_fit(std::span<const Vec2> points, int iterations, double threshold, Rng& rng);

/// Finite wedge endpoints in the body frame.
std::vector<Vec2> wedge_points(const SensorScan& scan);

/// Distance to the obstacle in front: the smaller of the nearest along-heading
/// wedge return and the distance to a RANSAC-fitted wall that crosses the
/// direction of travel.
double front_clearance(const SensorScan& scan, const WFParams& params, Rng& rng);

/// r_s ~= r_f cos(beta) within the relative alignment tolerance.
bool aligned_with_wall(Range r_s, Range r_f, const WFParams& params);

/// One control tick of the wall follower. Output comes from the current
/// mode; the mode transition applies from the next tick on.
Command wf_step(WFState& wf, const SensorScan& scan, const WFParams& params, Rng& rng);

}  // namespace bugnav
