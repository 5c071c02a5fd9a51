#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "bugnav/envgen.hpp"
#include "bugnav/episode.hpp"

namespace bugnav {

/// Wall cells, start and target. With a trace, the true trajectory is drawn
/// on top in green.
std::string environment_svg(const Environment& env, const std::vector<TraceRow>& trace = {});

struct SummaryEntry {
  std::string label;
  double success_rate = 0.0;               // 0..1
  std::array<double, 5> length_quartiles{};  // min, q1, median, q3, max of normalized length
};

/// Success-rate bars above normalized-length box plots, one column per entry.
std::string summary_svg(const std::vector<SummaryEntry>& entries, std::string_view title);

}  // namespace bugnav
