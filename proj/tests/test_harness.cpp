#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bugnav/analysis.hpp"
#include "bugnav/batch.hpp"
#include "bugnav/config.hpp"

using namespace bugnav;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const char* kSmall =
    "envs = 6\nseed = 3\n"
    "[a]\nalgorithms = com, alg2\nodom_sigma = 0, 0.1\n"
    "[b]\nalgorithms = alg1\np_fp = 0.01\nfp_mode = per_episode\n";

int config_error_line(const std::string& text, std::string* key = nullptr) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    if (key) *key = e.key();
    std::string what = e.what();
    return std::stoi(what.substr(std::string("config line ").size()));
  }
  return 0;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("episodes are deterministic") {
    const PreparedEnv env = prepare_environment(1, 0, GenParams{});
    EpisodeConfig cfg;
    cfg.algorithm = Algorithm::Alg2;
    cfg.noise.odom_sigma = 0.1;
    cfg.noise.p_fp = 0.01;
    cfg.noise.noise_seed = noise_seed_for(env.seed);
    cfg.record_trace = true;
    const auto a = run_episode(env, cfg);
    const auto b = run_episode(env, cfg);
    CHECK(a.trace == b.trace);
    CHECK(format_record(a.record) == format_record(b.record));
    CHECK(a.record.sim_time <= 300.0 + 1e-9);
    CHECK(a.record.normalized_length == doctest::Approx(a.record.path_length / a.record.astar_length));
  }

  TEST_CASE("environment preparation retries degenerate maps deterministically") {
    const PreparedEnv a = prepare_environment(1, 5, GenParams{});
    const PreparedEnv b = prepare_environment(1, 5, GenParams{});
    CHECK(a.seed == b.seed);
    CHECK(a.env == b.env);
    CHECK(std::isfinite(a.astar_length));
    CHECK(a.astar_length >= distance(a.env.start_pose.position, a.env.target) - 1e-9);
  }

  TEST_CASE("record CSV round trip") {
    RunRecord r;
    r.run_id = 42;
    r.env_seed = 123456789012345ULL;
    r.algorithm = Algorithm::Bug2;
    r.noise.odom_sigma = 0.1;
    r.noise.p_fp = 1.0 / 3.0;
    r.noise.fp_mode = FpMode::PerEpisode;
    r.success = true;
    r.sim_time = 12.35;
    r.path_length = 17.123456789012345;
    r.astar_length = 9.75;
    r.normalized_length = r.path_length / r.astar_length;
    r.leave_count = 3;
    r.reversal_count = 1;
    const std::string line = format_record(r);
    const RunRecord back = parse_record(line);
    CHECK(format_record(back) == line);
    CHECK(back.path_length == r.path_length);
    CHECK(back.noise.p_fp == r.noise.p_fp);
    CHECK_THROWS_AS(parse_record("1,2,com"), std::runtime_error);
    CHECK_THROWS_AS(parse_record(line.substr(0, line.find(",bug2")) + ",bug3" + line.substr(line.find(",bug2") + 5)),
                    std::runtime_error);
    CHECK_THROWS_AS(parse_results(""), std::runtime_error);
    CHECK_THROWS_AS(parse_results("wrong,header\n"), std::runtime_error);
    CHECK(parse_results(std::string(results_header()) + "\n" + line + "\n").size() == 1);
  }

  TEST_CASE("batch results do not depend on the worker count") {
    const auto spec = parse_config(kSmall).batch;
    const auto one = format_results(run_batch(spec, 1));
    const auto three = format_results(run_batch(spec, 3));
    CHECK(one == three);
    CHECK(parse_results(one).size() == 5 * 6);
  }

  TEST_CASE("an interrupted sweep resumes to the same file") {
    TempDir dir("bugnav_resume_test");
    const auto spec = parse_config(kSmall).batch;
    const fs::path fresh = dir.path / "fresh.csv";
    run_batch(spec, fresh, 2);
    const std::string full = slurp(fresh);

    // Keep the header, a few records in completion order, and half a line.
    const auto records = parse_results(full);
    std::string partial = std::string(results_header()) + "\n";
    for (std::size_t i : {7u, 2u, 19u}) partial += format_record(records[i]) + "\n";
    const std::string torn = format_record(records[11]);
    partial += torn.substr(0, torn.size() / 2);
    const fs::path resumed = dir.path / "resumed.csv";
    spit(resumed, partial);
    run_batch(spec, resumed, 2);
    CHECK(slurp(resumed) == full);

    // A finished file is left as it is.
    run_batch(spec, resumed, 1);
    CHECK(slurp(resumed) == full);

    // A file from another sweep is refused.
    auto other = spec;
    other.points[0].noise.odom_sigma = 0.3;
    CHECK_THROWS_AS(run_batch(other, resumed, 1), std::runtime_error);
    spit(resumed, std::string(results_header()) + "\n" + format_record(records[3]) + "\n" +
                      format_record(records[3]) + "\n");
    CHECK_THROWS_AS(run_batch(spec, resumed, 1), std::runtime_error);
  }

  TEST_CASE("parallel_for runs every index and propagates exceptions") {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::count(hits.begin(), hits.end(), 1) == 100);
    CHECK_THROWS_AS(parallel_for(10, 3,
                                 [](std::size_t i) {
                                   if (i == 6) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
  }

  TEST_CASE("config expansion") {
    const auto cfg = parse_config(kSmall);
    CHECK(cfg.batch.n_envs == 6);
    CHECK(cfg.batch.base_seed == 3);
    CHECK(cfg.sections == std::vector<std::string>{"a", "b"});
    REQUIRE(cfg.batch.points.size() == 5);
    CHECK(cfg.batch.points[0].algorithm == Algorithm::Com);
    CHECK(cfg.batch.points[1].noise.odom_sigma == 0.1);
    CHECK(cfg.batch.points[4].noise.fp_mode == FpMode::PerEpisode);

    // Points repeated by a later section are dropped.
    const auto dup = parse_config("[x]\nalgorithms = com\n[y]\nalgorithms = com, bug2\n");
    CHECK(dup.batch.points.size() == 2);
    // fp_mode does not split points without false positives.
    const auto moot = parse_config("[x]\nalgorithms = alg1\np_fp = 0, 0.1\nfp_mode = per_tick, per_episode\n");
    CHECK(moot.batch.points.size() == 3);
  }

  TEST_CASE("config errors name the line and key") {
    std::string key;
    CHECK(config_error_line("envs = 5\n", &key) == 2);  // no sections: reported at the end
    CHECK(config_error_line("envs = x\n[a]\nalgorithms = com\n", &key) == 1);
    CHECK(key == "envs");
    CHECK(config_error_line("[a]\nalgorithms = com, bug9\n", &key) == 2);
    CHECK(key == "algorithms");
    CHECK(config_error_line("[a]\nalgorithms = com\nodom_sigma = 0, -1\n", &key) == 1);
    CHECK(config_error_line("[a]\nalgorithms = com\nspeed = 2\n", &key) == 3);
    CHECK(key == "speed");
    CHECK(config_error_line("[a]\nalgorithms = com\nenvs = 3\n", &key) == 3);  // global key too late
    CHECK(config_error_line("t_cor = 1.5\n[a]\nalgorithms = com\n", &key) == 1);
    CHECK(key == "t_cor");
    CHECK(config_error_line("[a]\nalgorithms = com\n[a]\nalgorithms = bug2\n") == 3);
    CHECK(config_error_line("[a\n") == 1);
    CHECK(config_error_line("[a]\np_fp = 0.1\n", &key) == 1);
    CHECK(key == "algorithms");
    CHECK(config_error_line("[a]\nalgorithms = com\np_fn = 0.1,,0.2\n", &key) == 3);
    CHECK(config_error_line("[a]\nalgorithms = com\nfp_mode = sometimes\n", &key) == 3);
    CHECK(key == "fp_mode");
  }

  TEST_CASE("presets") {
    CHECK(preset_names().size() == 4);
    auto runs = [](std::string_view name) {
      const auto b = parse_config(preset_text(name)).batch;
      return b.points.size() * static_cast<std::size_t>(b.n_envs);
    };
    CHECK(runs("fig11_noiseless") == 1200);
    CHECK(runs("fig12_odometry") == 5000);
    CHECK(runs("fig14_fp_fn") == 4800);
    CHECK(runs("fig15_dt") == 3000);
    CHECK_THROWS_AS(preset_text("fig13"), std::invalid_argument);
    const auto grid = describe_grid(parse_config(preset_text("fig11_noiseless")).batch);
    CHECK(std::count(grid.begin(), grid.end(), '\n') == 6);
  }

  TEST_CASE("analysis tables") {
    std::vector<RunRecord> rs;
    std::uint64_t id = 0;
    for (Algorithm a : {Algorithm::Com, Algorithm::Alg2})
      for (double sigma : {0.0, 0.1, 0.2})
        for (int i = 0; i < 20; ++i) {
          RunRecord r;
          r.run_id = id++;
          r.algorithm = a;
          r.noise.odom_sigma = sigma;
          r.success = i < (a == Algorithm::Com ? 12 : 18) - static_cast<int>(sigma * 40);
          r.normalized_length = 1.0 + 0.05 * i + sigma;
          rs.push_back(r);
        }
    const Analysis an = analyze(rs, 1, 500);
    REQUIRE(an.groups.size() == 6);
    CHECK(an.groups[0].label == "com");
    CHECK(an.groups[1].label == "com odom_sigma=0.1");
    CHECK(an.groups[0].success_rate == doctest::Approx(0.6));
    CHECK(an.groups[0].length_quartiles[2] == doctest::Approx(1.475));
    CHECK(an.pairs.size() == 3);  // com vs alg2 at each sigma
    REQUIRE(an.regressions.size() == 2);
    CHECK(an.regressions[0].axis == NoiseAxis::OdomSigma);
    CHECK(an.regressions[0].has_logistic);
    CHECK(an.regressions[0].logistic.coefficient < 0.0);
    CHECK(an.regressions[0].linear.slope == doctest::Approx(1.0));

    const std::string csv = success_csv(an);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
    CHECK(csv.find("alg2,0.2,0,0,0,per_tick,20,10,0.5,") != std::string::npos);
    const std::string boot = bootstrap_csv(an);
    CHECK(std::count(boot.begin(), boot.end(), '\n') == 4);
    CHECK(report_text(an).find("alg2 ~ odom_sigma") != std::string::npos);

    TempDir dir("bugnav_analysis_test");
    write_analysis(an, dir.path);
    for (const char* f : {"report.txt", "success.csv", "bootstrap.csv", "regression.csv", "summary.svg"})
      CHECK(fs::exists(dir.path / f));
    CHECK_THROWS_AS(analyze({}), std::invalid_argument);
  }
}
