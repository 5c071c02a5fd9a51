#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "bugnav/bugs.hpp"
#include "bugnav/geometry.hpp"
#include "bugnav/rng.hpp"

namespace bugnav {

enum class FpMode { PerTick, PerEpisode };

std::string_view to_string(FpMode m);
std::optional<FpMode> parse_fp_mode(std::string_view s);

struct NoiseConfig {
  double odom_sigma = 0.0;  // m/s
  double p_fp = 0.0;
  double p_fn = 0.0;
  double dt_sigma = 0.0;    // m
  FpMode fp_mode = FpMode::PerTick;
  std::uint64_t noise_seed = 0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  bool operator==(const NoiseConfig&) const = default;
};

/// Measured per-tick displacement: each component ~ N(true, sigma*sqrt(dt)).
/// Passes the input through untouched (and draws nothing) when sigma is 0.
Vec2 noisy_velocity(Vec2 true_displacement, double sigma, double dt, Rng& rng);

/// max(0, N(true_d, sigma)); pass-through without a draw when sigma is 0.
double noisy_dt(double true_d, double sigma, Rng& rng);

/// True when the estimate newly enters the match radius of a stored point
/// whose cooldown has expired. Updates the per-point inside flags.
bool geo_match(std::vector<StoredHitPoint>& hit_points, Vec2 est_position, double clock, double eps,
               double cooldown);

struct RecognizerParams {
  double eps = 0.5;        // match radius, m
  double cooldown = 10.0;  // s after storage before a point can match
  double p_fp = 0.0;
  double p_fn = 0.0;
  FpMode fp_mode = FpMode::PerTick;
  double time_limit = 300.0;  // per-episode FP schedule horizon
  double fp_trial_period = 1.0;  // s per FP trial in per-episode mode
};

/// Hit-point recognizer with false-negative drops per true encounter and
/// spurious matches either per tick or on a per-episode schedule.
class NoisyRecognizer : public HitPointRecognizer {
 public:
  NoisyRecognizer(const RecognizerParams& params, std::uint64_t noise_seed);

  bool recognize(std::vector<StoredHitPoint>& hit_points, Vec2 est_position, double clock,
                 bool wall_following) override;

  const std::vector<double>& fp_schedule() const { return schedule_; }

 private:
  RecognizerParams params_;
  Rng rng_;
  std::vector<double> schedule_;  // ascending FP times, per-episode mode
  std::size_t next_fp_ = 0;
};

}  // namespace bugnav
