#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bugnav/envgen.hpp"
#include "bugnav/svg.hpp"

using namespace bugnav;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = BUGNAV_FIXTURES;

// Set BUGNAV_REGEN_FIXTURES=1 to rewrite the golden files after an
// intentional change to the drawing code.
void check_golden(const std::string& name, const std::string& actual) {
  const fs::path path = kFixtures / name;
  if (std::getenv("BUGNAV_REGEN_FIXTURES")) {
    std::ofstream(path, std::ios::binary | std::ios::trunc) << actual;
  }
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing fixture " << path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == actual);
}

Environment small_env() {
  return load_env(
      "bugnav-env v1 6 5 1\n"
      "######\n"
      "#S...#\n"
      "#.##.#\n"
      "#...T#\n"
      "######\n");
}

}  // namespace

TEST_SUITE("svg") {
  TEST_CASE("environment drawing matches the golden file") {
    check_golden("small_env.svg", environment_svg(small_env()));
  }

  TEST_CASE("trajectory drawing matches the golden file") {
    const std::vector<TraceRow> trace = {
        {0.0, {{1.5, 1.5}, 0.0}, NavMode::Forward},
        {1.0, {{2.0, 1.5}, 0.0}, NavMode::Forward},
        {2.0, {{3.5, 1.5}, 0.5}, NavMode::WallFollowing},
        {3.0, {{4.5, 3.5}, 1.0}, NavMode::Forward},
    };
    check_golden("small_trajectory.svg", environment_svg(small_env(), trace));
  }

  TEST_CASE("summary drawing matches the golden file") {
    const std::vector<SummaryEntry> entries = {
        {"com", 0.63, {0.9, 1.3, 2.0, 10.6, 15.7}},
        {"alg2 <dt>", 0.885, {0.9, 1.3, 1.86, 3.16, 11.8}},
    };
    check_golden("summary.svg", summary_svg(entries, "Success & length"));
  }

  TEST_CASE("drawings are well-formed") {
    const std::string svg = environment_svg(small_env());
    CHECK(svg.rfind("<svg ", 0) == 0);
    CHECK(svg.find("</svg>\n") == svg.size() - 7);
    CHECK(svg.find("width=\"260.00\"") != std::string::npos);  // 6 m * 40 px + 2 * 10 px
    // One rect per horizontal wall run: rows 0 and 4 whole, rows 1 and 3 two ends,
    // row 2 three runs, plus the background.
    std::size_t rects = 0;
    for (std::size_t p = svg.find("<rect"); p != std::string::npos; p = svg.find("<rect", p + 1)) ++rects;
    CHECK(rects == 1 + 1 + 2 + 3 + 2 + 1);
    const std::string summary = summary_svg({{"a<b", 0.5, {1, 1, 1, 1, 1}}}, "t");
    CHECK(summary.find("a&lt;b") != std::string::npos);
  }
}
