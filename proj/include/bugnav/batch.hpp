#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "bugnav/envgen.hpp"
#include "bugnav/episode.hpp"

namespace bugnav {

/// One (algorithm, noise) cell of a sweep. The noise seed is filled in per
/// environment.
struct SweepPoint {
  Algorithm algorithm = Algorithm::Com;
  NoiseConfig noise;
  bool operator==(const SweepPoint&) const = default;
};

struct BatchSpec {
  int n_envs = 200;
  std::uint64_t base_seed = 1;
  GenParams gen;            // seed is ignored, environment seeds are derived
  EpisodeConfig episode;    // algorithm and noise are taken from each point
  std::vector<SweepPoint> points;
};

/// Worker count from BUGNAV_WORKERS, else the hardware concurrency.
int default_workers();

/// Runs f(0..n-1) on up to `workers` threads. The first exception thrown by
/// any call is rethrown after all threads stop.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& f);

/// Environment i is generated from derive_seed(base_seed, i, attempt) for
/// the first attempt whose padded oracle grid keeps start and target free.
PreparedEnv prepare_environment(std::uint64_t base_seed, int i, const GenParams& gen);
std::vector<PreparedEnv> prepare_environments(const BatchSpec& spec, int workers);

/// run_id of point j on environment i.
inline std::uint64_t run_id(std::size_t point, std::size_t env, std::size_t n_envs) {
  return static_cast<std::uint64_t>(point * n_envs + env);
}

std::string_view results_header();
std::string format_record(const RunRecord& r);
/// Throws std::runtime_error on a malformed line.
RunRecord parse_record(std::string_view line);
/// Parses a whole results file including its header.
std::vector<RunRecord> parse_results(std::string_view text);
std::string format_results(const std::vector<RunRecord>& records);

/// Runs every point on every environment. Records are appended to
/// `results` as they finish; run_ids already present in the file are
/// skipped, and a trailing partial line from an interrupted run is dropped.
/// On return the file holds all records sorted by run_id.
std::vector<RunRecord> run_batch(const BatchSpec& spec, const std::filesystem::path& results, int workers);

/// Same without a file.
std::vector<RunRecord> run_batch(const BatchSpec& spec, int workers);

}  // namespace bugnav
