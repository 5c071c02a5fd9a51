#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bugnav/episode.hpp"
#include "bugnav/stats.hpp"

namespace bugnav {

/// Noise axes a sweep can vary.
enum class NoiseAxis { OdomSigma, PFp, PFn, DtSigma };
inline constexpr NoiseAxis kAllAxes[] = {NoiseAxis::OdomSigma, NoiseAxis::PFp, NoiseAxis::PFn, NoiseAxis::DtSigma};
std::string_view to_string(NoiseAxis a);
double axis_value(const NoiseConfig& n, NoiseAxis a);

/// All runs of one algorithm at one noise setting.
struct GroupSummary {
  Algorithm algorithm = Algorithm::Com;
  NoiseConfig noise;  // noise_seed is zero
  std::string label;
  int runs = 0;
  int successes = 0;
  double success_rate = 0.0;
  std::array<double, 5> length_quartiles{};  // over all runs, failed ones included
  double mean_length = 0.0;
};

struct PairTest {
  std::string a;
  std::string b;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double p_value = 1.0;
};

/// Success and trajectory length against one noise axis for one
/// algorithm, using the runs whose other axes are all zero.
struct RegressionRow {
  Algorithm algorithm = Algorithm::Com;
  NoiseAxis axis = NoiseAxis::OdomSigma;
  std::size_t n = 0;
  bool has_logistic = false;
  LogisticFit logistic;
  bool has_linear = false;
  LinearFit linear;
  std::string note;  // why a fit is missing
};

struct Analysis {
  std::vector<GroupSummary> groups;
  std::vector<PairTest> pairs;
  std::vector<RegressionRow> regressions;
};

/// Groups appear in order of their first run_id. Pairwise bootstrap tests
/// compare normalized lengths between algorithms sharing a noise setting.
Analysis analyze(const std::vector<RunRecord>& records, std::uint64_t seed = 1, int n_resamples = 10000);

std::vector<GroupSummary> summarize(const std::vector<RunRecord>& records);
std::vector<RegressionRow> regressions(const std::vector<RunRecord>& records);

std::string group_label(Algorithm a, const NoiseConfig& n);

std::string report_text(const Analysis& a);
std::string success_csv(const Analysis& a);
std::string bootstrap_csv(const Analysis& a);
std::string regression_csv(const Analysis& a);
std::string analysis_svg(const Analysis& a);

/// report.txt, success.csv, bootstrap.csv, regression.csv, summary.svg.
void write_analysis(const Analysis& a, const std::filesystem::path& dir);

}  // namespace bugnav
