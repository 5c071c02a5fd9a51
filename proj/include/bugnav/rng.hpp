#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace bugnav {

/// Mixes a base seed with up to two tags into an independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, std::uint64_t tag2 = 0);

// Independent random streams per purpose. Enabling one noise source must not
// shift the sample sequence any other consumer sees.
enum class Stream : std::uint64_t {
  Environment = 1,
  Odometry = 2,
  Recognizer = 3,
  DistanceToTarget = 4,
  Ransac = 5,
  FpSchedule = 6,
  Statistics = 7,
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, Stream stream) : engine_(derive_seed(seed, static_cast<std::uint64_t>(stream))) {}

  double uniform() { return uniform_(engine_); }
  double normal(double mean, double sd);
  bool bernoulli(double p);
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n);
  int uniform_int(int lo, int hi);  // inclusive

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace bugnav
