#include "bugnav/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace bugnav {

std::string_view to_string(FpMode m) { return m == FpMode::PerTick ? "per_tick" : "per_episode"; }

std::optional<FpMode> parse_fp_mode(std::string_view s) {
  if (s == "per_tick") return FpMode::PerTick;
  if (s == "per_episode") return FpMode::PerEpisode;
  return std::nullopt;
}

void NoiseConfig::validate() const {
  auto check = [](bool ok, const char* name) {
    if (!ok) throw std::invalid_argument(std::string("invalid ") + name);
  };
  check(std::isfinite(odom_sigma) && odom_sigma >= 0.0, "odom_sigma");
  check(p_fp >= 0.0 && p_fp <= 1.0, "p_fp");
  check(p_fn >= 0.0 && p_fn <= 1.0, "p_fn");
  check(std::isfinite(dt_sigma) && dt_sigma >= 0.0, "dt_sigma");
}

Vec2 noisy_velocity(Vec2 true_displacement, double sigma, double dt, Rng& rng) {
  if (sigma <= 0.0) return true_displacement;
  const double sd = sigma * std::sqrt(dt);
  const double x = rng.normal(true_displacement.x, sd);
  const double y = rng.normal(true_displacement.y, sd);
  return {x, y};
}

double noisy_dt(double true_d, double sigma, Rng& rng) {
  if (sigma <= 0.0) return true_d;
  return std::max(0.0, rng.normal(true_d, sigma));
}

bool geo_match(std::vector<StoredHitPoint>& hit_points, Vec2 est_position, double clock, double eps,
               double cooldown) {
  bool match = false;
  for (auto& hp : hit_points) {
    const bool within = distance(hp.position, est_position) <= eps;
    if (within && !hp.inside && clock - hp.stored_at >= cooldown) match = true;
    hp.inside = within;
  }
  return match;
}

NoisyRecognizer::NoisyRecognizer(const RecognizerParams& params, std::uint64_t noise_seed)
    : params_(params), rng_(noise_seed, Stream::Recognizer) {
  if (params_.fp_mode == FpMode::PerEpisode && params_.p_fp > 0.0) {
    Rng sched(noise_seed, Stream::FpSchedule);
    const auto trials = static_cast<int>(std::floor(params_.time_limit / params_.fp_trial_period));
    std::binomial_distribution<int> k_dist(trials, params_.p_fp);
    const int k = k_dist(sched.engine());
    for (int i = 0; i < k; ++i) schedule_.push_back(sched.uniform() * params_.time_limit);
    std::sort(schedule_.begin(), schedule_.end());
  }
}

bool NoisyRecognizer::recognize(std::vector<StoredHitPoint>& hit_points, Vec2 est_position, double clock,
                                bool wall_following) {
  const bool geo = geo_match(hit_points, est_position, clock, params_.eps, params_.cooldown);
  if (!wall_following) return false;
  if (geo) return !rng_.bernoulli(params_.p_fn);
  if (hit_points.empty()) return false;
  if (params_.fp_mode == FpMode::PerTick) return rng_.bernoulli(params_.p_fp);
  // A scheduled spurious match waits for the first eligible tick.
  if (next_fp_ < schedule_.size() && schedule_[next_fp_] <= clock) {
    while (next_fp_ < schedule_.size() && schedule_[next_fp_] <= clock) ++next_fp_;
    return true;
  }
  return false;
}

}  // namespace bugnav
