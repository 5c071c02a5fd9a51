#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bugnav/analysis.hpp"
#include "bugnav/batch.hpp"
#include "bugnav/config.hpp"
#include "bugnav/envgen.hpp"
#include "bugnav/episode.hpp"
#include "bugnav/oracle.hpp"
#include "bugnav/svg.hpp"

namespace fs = std::filesystem;
using namespace bugnav;

namespace {

// Bad flags, bad config, bad input files.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed: " + p.string());
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
}

struct GenFlags {
  std::uint64_t seed = 1;
  GenParams params;
};

void add_gen_flags(CLI::App* cmd, GenFlags& g) {
  cmd->add_option("--p-str", g.params.p_str, "Walker probability of going straight")->capture_default_str();
  cmd->add_option("--t-cor", g.params.t_cor, "Corridor density that stops the walkers")->capture_default_str();
  cmd->add_option("--arena-size", g.params.arena_size, "Arena side length in meters")->capture_default_str();
  cmd->add_option("--room-split-max", g.params.room_split_max, "Largest room side in cells")->capture_default_str();
}

GenParams checked(GenParams p, std::uint64_t seed) {
  p.seed = seed;
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return p;
}

struct RunFlags {
  std::string env_file;
  std::string alg;
  NoiseConfig noise;
  std::string fp_mode = "per_tick";
  std::string out = ".";
};

int cmd_gen(const GenFlags& g, const std::string& out) {
  const Environment env = generate(checked(g.params, g.seed));
  make_dir(out);
  const fs::path base = fs::path(out) / ("env-" + std::to_string(g.seed));
  write_file(base.string() + ".txt", save_env(env));
  write_file(base.string() + ".svg", environment_svg(env));
  std::cout << base.string() << ".txt\n" << base.string() << ".svg\n";
  return 0;
}

int cmd_run(const GenFlags& g, RunFlags& r) {
  const auto alg = parse_algorithm(r.alg);
  if (!alg) throw UsageError("unknown algorithm '" + r.alg + "' (expected wf, com, com1, bug2, alg1 or alg2)");
  const auto mode = parse_fp_mode(r.fp_mode);
  if (!mode) throw UsageError("unknown fp mode '" + r.fp_mode + "' (expected per_tick or per_episode)");
  r.noise.fp_mode = *mode;
  try {
    r.noise.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  Environment env;
  if (!r.env_file.empty()) {
    try {
      env = load_env(read_file(r.env_file));
    } catch (const ParseError& e) {
      throw UsageError(r.env_file + ": " + e.what());
    }
  } else {
    env = generate(checked(g.params, g.seed));
  }
  const PreparedEnv prepared = prepare(std::move(env), g.seed);

  EpisodeConfig cfg;
  cfg.algorithm = *alg;
  cfg.noise = r.noise;
  cfg.noise.noise_seed = noise_seed_for(g.seed);
  cfg.record_trace = true;
  const EpisodeResult result = run_episode(prepared, cfg);

  make_dir(r.out);
  const fs::path dir(r.out);
  const std::string record = std::string(results_header()) + "\n" + format_record(result.record) + "\n";
  write_file(dir / "record.csv", record);
  write_file(dir / "trace.csv", trace_csv(result.trace));
  write_file(dir / "trajectory.svg", environment_svg(prepared.env, result.trace));
  std::cout << record;
  return 0;
}

struct SweepFlags {
  std::string config;
  std::string preset;
  std::string out;
  int workers = 0;
  int envs = 0;
  long long seed = -1;
};

int cmd_sweep(SweepFlags& s, const std::string& command_line) {
  if (s.config.empty() == s.preset.empty()) throw UsageError("give exactly one of --config and --preset");
  std::string text;
  std::string source;
  if (!s.config.empty()) {
    text = read_file(s.config);
    source = fs::absolute(s.config).string();
  } else {
    try {
      text = std::string(preset_text(s.preset));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    source = "preset:" + s.preset;
  }
  SweepConfig cfg;
  try {
    cfg = parse_config(text);
  } catch (const ConfigError& e) {
    throw UsageError(std::string(e.what()));
  }
  if (s.envs > 0) cfg.batch.n_envs = s.envs;
  if (s.seed >= 0) cfg.batch.base_seed = static_cast<std::uint64_t>(s.seed);
  int workers = s.workers;
  if (workers <= 0) {
    try {
      workers = default_workers();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  make_dir(s.out);
  const fs::path dir(s.out);
  std::string manifest = "bugnav-manifest v1\n";
  manifest += "command = " + command_line + "\n";
  manifest += "config = " + source + "\n";
  manifest += "output = " + fs::absolute(dir).string() + "\n";
  manifest += "envs = " + std::to_string(cfg.batch.n_envs) + "\n";
  manifest += "seed = " + std::to_string(cfg.batch.base_seed) + "\n";
  manifest += "points = " + std::to_string(cfg.batch.points.size()) + "\n";
  manifest += "runs = " + std::to_string(cfg.batch.points.size() * static_cast<std::size_t>(cfg.batch.n_envs)) + "\n";
  manifest += "[grid]\n" + describe_grid(cfg.batch);
  // When resuming, the old manifest stays until the results are known to
  // belong to this sweep.
  const bool resuming = fs::exists(dir / "results.csv");
  auto write_manifest = [&] {
    write_file(dir / "manifest.txt", manifest);
    write_file(dir / "sweep.cfg", text);
  };
  if (!resuming) write_manifest();
  const auto records = run_batch(cfg.batch, dir / "results.csv", workers);
  if (resuming) write_manifest();
  std::cout << "wrote " << records.size() << " runs to " << (dir / "results.csv").string() << "\n";
  return 0;
}

int cmd_analyze(const std::string& results, std::string out, std::uint64_t seed, int resamples) {
  if (resamples < 1) throw UsageError("--resamples must be positive");
  std::vector<RunRecord> records;
  try {
    records = parse_results(read_file(results));
  } catch (const UsageError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw UsageError(results + ": " + e.what());
  }
  if (records.empty()) throw UsageError(results + ": no runs in results file");
  if (out.empty()) out = fs::path(results).parent_path().string();
  if (out.empty()) out = ".";
  const Analysis a = analyze(records, seed, resamples);
  write_analysis(a, out);
  std::cout << report_text(a);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bug-algorithm navigation simulator and benchmark harness"};
  app.require_subcommand(1);

  GenFlags gen;
  std::string gen_out = ".";
  auto* g = app.add_subcommand("gen", "Generate an environment file and its SVG rendering");
  g->add_option("--seed", gen.seed, "Environment seed")->capture_default_str();
  add_gen_flags(g, gen);
  g->add_option("--out", gen_out, "Output directory")->capture_default_str();

  GenFlags run_gen;
  RunFlags run;
  auto* r = app.add_subcommand("run", "Run one episode and write the record, trace and trajectory SVG");
  r->add_option("--env", run.env_file, "Environment file (otherwise generated from --seed)");
  r->add_option("--seed", run_gen.seed, "Environment seed; also seeds the noise streams")->capture_default_str();
  add_gen_flags(r, run_gen);
  r->add_option("--alg", run.alg, "wf, com, com1, bug2, alg1 or alg2")->required();
  r->add_option("--odom-sigma", run.noise.odom_sigma, "Odometry velocity noise (m/s)")->capture_default_str();
  r->add_option("--p-fp", run.noise.p_fp, "False-positive hit-point recognition probability")->capture_default_str();
  r->add_option("--p-fn", run.noise.p_fn, "False-negative hit-point recognition probability")->capture_default_str();
  r->add_option("--dt-sigma", run.noise.dt_sigma, "Distance-to-target noise (m)")->capture_default_str();
  r->add_option("--fp-mode", run.fp_mode, "per_tick or per_episode")->capture_default_str();
  r->add_option("--out", run.out, "Output directory")->capture_default_str();

  SweepFlags sweep;
  auto* s = app.add_subcommand("sweep", "Run a batch sweep from a config file or preset (resumable)");
  s->add_option("--config", sweep.config, "Sweep config file");
  s->add_option("--preset", sweep.preset, "fig11_noiseless, fig12_odometry, fig14_fp_fn or fig15_dt");
  s->add_option("--out", sweep.out, "Output directory")->required();
  s->add_option("--workers", sweep.workers, "Worker threads (default BUGNAV_WORKERS or the core count)");
  s->add_option("--envs", sweep.envs, "Override the number of environments")->check(CLI::PositiveNumber);
  s->add_option("--seed", sweep.seed, "Override the base seed")->check(CLI::NonNegativeNumber);

  std::string results;
  std::string analyze_out;
  std::uint64_t analyze_seed = 1;
  int resamples = 10000;
  auto* a = app.add_subcommand("analyze", "Statistics report, CSV tables and summary SVG for a results file");
  a->add_option("results", results, "results.csv from a sweep")->required();
  a->add_option("--out", analyze_out, "Output directory (default: next to the results)");
  a->add_option("--seed", analyze_seed, "Bootstrap seed")->capture_default_str();
  a->add_option("--resamples", resamples, "Bootstrap resamples")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command_line;
  for (int i = 0; i < argc; ++i) {
    if (i) command_line += ' ';
    command_line += argv[i];
  }

  try {
    if (*g) return cmd_gen(gen, gen_out);
    if (*r) return cmd_run(run_gen, run);
    if (*s) return cmd_sweep(sweep, command_line);
    if (*a) return cmd_analyze(results, analyze_out, analyze_seed, resamples);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
