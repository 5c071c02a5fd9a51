#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bugnav/episode.hpp"
#include "bugnav/wallfollow.hpp"

using namespace bugnav;

namespace {

// Distance from the origin to the line through the two beam endpoints.
double cartesian(double r_s, double r_f, double beta) {
  const Vec2 a{r_s, 0.0};
  const Vec2 b = unit(beta) * r_f;
  return std::abs(a.cross(b)) / distance(a, b);
}

SensorScan scan_of(const std::vector<Segment>& walls, Pose pose) {
  return sense(pose, SensorRig{}, SegmentIndex(walls, 1.0));
}

Environment from_rows(const std::vector<std::string>& rows) {
  GridMap g(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()), 1.0);
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x) {
      const char c = rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      g.set(x, y, c == '#' ? Cell::Wall : Cell::Free);
      if (c == 'S') g.start = {x, y};
      if (c == 'T') g.target = {x, y};
    }
  return make_environment(g);
}

}  // namespace

TEST_SUITE("wallfollow") {
  TEST_CASE("perpendicular distance fixtures") {
    CHECK(perpendicular_distance(1.0, 1.0, std::numbers::pi / 3) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
    CHECK(perpendicular_distance(3.0, 4.0, std::numbers::pi / 2) == doctest::Approx(2.4).epsilon(1e-12));
    // Parallel to the wall at d: r_s = d, r_f = d / cos(beta).
    CHECK(perpendicular_distance(0.5, 1.0, deg(60)) == doctest::Approx(0.5));
  }

  TEST_CASE("perpendicular distance matches the point-to-line oracle") {
    Rng rng(41);
    for (int i = 0; i < 5000; ++i) {
      const double r_s = 0.05 + 2.95 * rng.uniform();
      const double r_f = 0.05 + 2.95 * rng.uniform();
      const double beta = 0.1 + (std::numbers::pi - 0.2) * rng.uniform();
      CHECK(std::abs(perpendicular_distance(r_s, r_f, beta) - cartesian(r_s, r_f, beta)) <= 1e-9);
    }
  }

  TEST_CASE("perpendicular distance rejects bad input") {
    CHECK_THROWS_AS(perpendicular_distance(1.0, 1.0, 1e-12), DegenerateTriangle);
    CHECK_THROWS_AS(perpendicular_distance(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(perpendicular_distance(INFINITY, 1.0, 1.0), std::invalid_argument);
  }

  TEST_CASE("RANSAC recovers a line among outliers") {
    Rng gen(42), rng(43);
    std::vector<Vec2> pts;
    for (int i = 0; i < 16; ++i) pts.push_back({0.1 * i, 0.8 + 0.5 * 0.1 * i + gen.normal(0.0, 0.005)});
    pts.push_back({0.3, -1.0});
    pts.push_back({1.1, 2.5});
    pts.push_back({0.7, 0.0});
    const WallFit fit = ransac_wall_fit(pts, 50, 0.05, rng);
    CHECK(fit.inliers == 16);
    CHECK(fit.angle == doctest::Approx(std::atan(0.5)).epsilon(0.02));
    CHECK(fit.distance == doctest::Approx(0.8 * std::cos(std::atan(0.5))).epsilon(0.02));

    const std::vector<Vec2> vertical = {{1, -1}, {1, 0}, {1, 1}};
    const WallFit v = ransac_wall_fit(vertical, 20, 0.01, rng);
    CHECK(v.angle == doctest::Approx(std::numbers::pi / 2));
    CHECK(v.distance == doctest::Approx(1.0));
    CHECK_THROWS_AS(ransac_wall_fit(std::vector<Vec2>{{1, 1}}, 10, 0.1, rng), InsufficientPoints);
  }

  TEST_CASE("front clearance sees a wall across the path") {
    Rng rng(44);
    const WFParams p;
    const auto ahead = scan_of({{{1.5, -3}, {1.5, 3}}}, {{0, 0}, 0.0});
    CHECK(wedge_points(ahead).size() == 20);
    CHECK(front_clearance(ahead, p, rng) == doctest::Approx(1.5));
    const auto empty = scan_of({{{5, -3}, {5, 3}}}, {{0, 0}, 0.0});
    CHECK(std::isinf(front_clearance(empty, p, rng)));
  }

  TEST_CASE("alignment test") {
    const WFParams p;
    CHECK(aligned_with_wall(Range::hit(0.5), Range::hit(1.0), p));
    CHECK_FALSE(aligned_with_wall(Range::hit(0.5), Range::hit(1.3), p));
    CHECK_FALSE(aligned_with_wall(Range::out_of_range(), Range::hit(1.0), p));
  }

  TEST_CASE("rotate to align turns away from the wall side") {
    Rng rng(45);
    const WFParams p;
    // Wall straight ahead at 0.4 m.
    const auto scan = scan_of({{{0.4, -3}, {0.4, 3}}}, {{0, 0}, 0.0});
    WFState right{WFMode::RotateToAlignWall, 1};
    CHECK(wf_step(right, scan, p, rng) == Command{0.0, -1.0});
    CHECK(right.mode == WFMode::RotateToAlignWall);
    WFState left{WFMode::RotateToAlignWall, -1};
    CHECK(wf_step(left, scan, p, rng) == Command{0.0, 1.0});
  }

  TEST_CASE("aligned beside a wall the follower drives straight") {
    Rng rng(46);
    const WFParams p;
    // Wall on the right (+y) at 0.5 m, running along the heading.
    const auto scan = scan_of({{{-3, 0.5}, {5, 0.5}}}, {{0, 0}, 0.0});
    WFState wf{WFMode::RotateToAlignWall, 1};
    wf_step(wf, scan, p, rng);
    CHECK(wf.mode == WFMode::WallFollowingAndAligning);
    CHECK(wf_step(wf, scan, p, rng) == Command{p.c_v, 0.0});

    // Too far from the wall: turn toward it.
    const auto far = scan_of({{{-3, 0.7}, {5, 0.7}}}, {{0, 0}, 0.0});
    CHECK(wf_step(wf, far, p, rng) == Command{p.c_v, p.c_w});
    // Too close: turn away.
    const auto close = scan_of({{{-3, 0.35}, {5, 0.35}}}, {{0, 0}, 0.0});
    CHECK(wf_step(wf, close, p, rng) == Command{p.c_v, -p.c_w});
  }

  TEST_CASE("corner mode arcs around the wall side") {
    Rng rng(47);
    const WFParams p;
    WFState wf{WFMode::RotateAroundCorner, 1};
    const auto open = scan_of({{{-3, 5}, {-2, 5}}}, {{0, 0}, 0.0});
    CHECK(wf_step(wf, open, p, rng) == Command{p.c_v, p.c_v / p.d_ref});
    CHECK(wf.mode == WFMode::RotateAroundCorner);
  }

  TEST_CASE("closed loop: distance to a long straight wall settles near d_ref") {
    std::vector<std::string> rows(6, std::string(40, '.'));
    rows[0] = rows[5] = std::string(40, '#');
    for (auto& r : rows) r.front() = r.back() = '#';
    rows[2][35] = 'S';
    rows[2][2] = 'T';
    Environment env = from_rows(rows);
    env.start_pose.heading = std::numbers::pi / 2;
    PreparedEnv prepared;
    prepared.index = SegmentIndex(env.walls, 1.0);
    prepared.astar_length = 1.0;
    prepared.env = env;
    EpisodeConfig cfg;
    cfg.algorithm = Algorithm::WF;
    cfg.time_limit = 60.0;
    cfg.record_trace = true;
    const auto result = run_episode(prepared, cfg);
    double travelled = 0.0;
    int samples = 0;
    for (std::size_t k = 1; k < result.trace.size(); ++k) {
      const Vec2 q = result.trace[k].pose.position;
      travelled += distance(q, result.trace[k - 1].pose.position);
      if (travelled < 3.0 || q.x < 6.0 || q.x > 34.0) continue;
      CHECK(std::abs(std::min(q.y - 1.0, 5.0 - q.y) - 0.5) <= 0.2);
      ++samples;
    }
    CHECK(samples > 100);
  }
}
