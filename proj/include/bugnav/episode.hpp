#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bugnav/bugs.hpp"
#include "bugnav/envgen.hpp"
#include "bugnav/geometry.hpp"
#include "bugnav/noise.hpp"
#include "bugnav/robot.hpp"

namespace bugnav {

/// An environment with everything the simulator and the oracle need.
struct PreparedEnv {
  std::uint64_t seed = 0;
  Environment env;
  SegmentIndex index;
  double astar_length = 0.0;
};

/// Builds the wall index and the oracle length. Throws PaddingDegenerate.
PreparedEnv prepare(Environment env, std::uint64_t seed = 0);

struct EpisodeConfig {
  Algorithm algorithm = Algorithm::Com;
  NoiseConfig noise;
  double time_limit = 300.0;
  double goal_radius = 1.0;
  RobotParams robot;
  SensorRig rig;
  BugParams bug;
  RecognizerParams recognizer;  // noise fields are taken from `noise`
  bool record_trace = false;
};

struct RunRecord {
  std::uint64_t run_id = 0;
  std::uint64_t env_seed = 0;
  Algorithm algorithm = Algorithm::Com;
  NoiseConfig noise;
  bool success = false;
  double sim_time = 0.0;
  double path_length = 0.0;
  double astar_length = 0.0;
  double normalized_length = 0.0;
  int leave_count = 0;
  int reversal_count = 0;
};

struct TraceRow {
  double t = 0.0;
  Pose pose;
  NavMode mode = NavMode::Forward;
  bool operator==(const TraceRow&) const = default;
};

struct EpisodeResult {
  RunRecord record;
  std::vector<TraceRow> trace;
};

/// Closed loop sense -> percept -> controller -> motion until the robot is
/// within goal_radius of the target or the time limit runs out.
EpisodeResult run_episode(const PreparedEnv& env, const EpisodeConfig& cfg);

/// Noise seed for an environment, shared by every algorithm and noise level
/// run on it.
std::uint64_t noise_seed_for(std::uint64_t env_seed);

std::string trace_csv(const std::vector<TraceRow>& trace);

}  // namespace bugnav
