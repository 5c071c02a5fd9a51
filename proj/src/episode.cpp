#include "bugnav/episode.hpp"

#include <cmath>
#include <memory>

#include "bugnav/oracle.hpp"
#include "bugnav/text.hpp"

namespace bugnav {

PreparedEnv prepare(Environment env, std::uint64_t seed) {
  PreparedEnv p;
  p.seed = seed;
  p.astar_length = oracle_length(env.grid);
  if (!std::isfinite(p.astar_length)) throw PaddingDegenerate("padding disconnects start from target");
  p.index = SegmentIndex(env.walls, 1.0);
  p.env = std::move(env);
  return p;
}

std::uint64_t noise_seed_for(std::uint64_t env_seed) { return derive_seed(env_seed, 0x6e6f697365ULL); }

EpisodeResult run_episode(const PreparedEnv& prepared, const EpisodeConfig& cfg) {
  cfg.noise.validate();
  if (!(cfg.time_limit > 0.0)) throw std::invalid_argument("time_limit must be positive");
  if (!(cfg.goal_radius > 0.0)) throw std::invalid_argument("goal_radius must be positive");

  const Environment& env = prepared.env;
  const double dt = cfg.robot.dt;
  const std::uint64_t seed = cfg.noise.noise_seed;
  Rng odom_rng(seed, Stream::Odometry);
  Rng dt_rng(seed, Stream::DistanceToTarget);
  Rng ransac_rng(seed, Stream::Ransac);

  std::unique_ptr<NoisyRecognizer> recognizer;
  if (uses_hit_list(cfg.algorithm)) {
    RecognizerParams rp = cfg.recognizer;
    rp.p_fp = cfg.noise.p_fp;
    rp.p_fn = cfg.noise.p_fn;
    rp.fp_mode = cfg.noise.fp_mode;
    rp.time_limit = cfg.time_limit;
    recognizer = std::make_unique<NoisyRecognizer>(rp, seed);
  }

  BugParams bug = cfg.bug;
  bug.dt = dt;
  RobotState state;
  state.true_pose = env.start_pose;
  state.est_position = env.start_pose.position;
  state.est_heading = env.start_pose.heading;
  NavState nav = initial_nav_state(cfg.algorithm, env.start_pose.position, env.target);

  EpisodeResult result;
  RunRecord& rec = result.record;
  rec.env_seed = prepared.seed;
  rec.algorithm = cfg.algorithm;
  rec.noise = cfg.noise;
  rec.astar_length = prepared.astar_length;
  if (cfg.record_trace) result.trace.push_back({0.0, state.true_pose, nav.mode});

  const auto max_ticks = static_cast<long>(std::ceil(cfg.time_limit / dt - 1e-9));
  long tick = 0;
  while (true) {
    if (distance(state.true_pose.position, env.target) <= cfg.goal_radius) {
      rec.success = true;
      break;
    }
    if (tick >= max_ticks) break;

    const SensorScan scan = sense(state.true_pose, cfg.rig, prepared.index, state.blocked);
    TargetPercept percept;
    const Vec2 to_target = env.target - state.est_position;
    percept.est_position = state.est_position;
    percept.est_distance = to_target.norm();
    percept.bearing = normalize_angle(std::atan2(to_target.y, to_target.x) - state.est_heading);
    percept.compare_distance = cfg.noise.dt_sigma > 0.0
                                   ? noisy_dt(distance(state.true_pose.position, env.target), cfg.noise.dt_sigma, dt_rng)
                                   : percept.est_distance;
    percept.path_free = path_to_target_free(scan, percept.bearing, percept.est_distance, bug.free_cone);
    percept.clock = state.clock;

    const Command cmd = bug_step(cfg.algorithm, nav, scan, percept, recognizer.get(), bug, ransac_rng);
    RobotState next = step(state, cmd.v, cmd.w, dt, prepared.index, cfg.robot.body_radius);
    ++tick;
    next.clock = static_cast<double>(tick) * dt;

    const Vec2 moved = next.true_pose.position - state.true_pose.position;
    rec.path_length += moved.norm();
    next.est_position = integrate_odometry(state.est_position, noisy_velocity(moved, cfg.noise.odom_sigma, dt, odom_rng));
    next.est_heading = next.true_pose.heading;
    state = next;
    if (cfg.record_trace) result.trace.push_back({state.clock, state.true_pose, nav.mode});
  }

  rec.sim_time = state.clock;
  rec.normalized_length = rec.path_length / rec.astar_length;
  rec.leave_count = nav.leave_count;
  rec.reversal_count = nav.reversal_count;
  return result;
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::string out = "t_s,x_m,y_m,heading_rad,mode\n";
  for (const auto& r : trace) {
    out += format_double(r.t);
    out += ',';
    out += format_double(r.pose.position.x);
    out += ',';
    out += format_double(r.pose.position.y);
    out += ',';
    out += format_double(r.pose.heading);
    out += ',';
    out += to_string(r.mode);
    out += '\n';
  }
  return out;
}

}  // namespace bugnav
