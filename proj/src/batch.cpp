#include "bugnav/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bugnav/oracle.hpp"
#include "bugnav/text.hpp"

namespace bugnav {

int default_workers() {
  if (const char* env = std::getenv("BUGNAV_WORKERS")) {
    const auto n = parse_int(env);
    if (!n || *n < 1) throw std::invalid_argument("BUGNAV_WORKERS must be a positive integer");
    return static_cast<int>(*n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& f) {
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

PreparedEnv prepare_environment(std::uint64_t base_seed, int i, const GenParams& gen) {
  for (int attempt = 0; attempt < gen.max_attempts; ++attempt) {
    GenParams p = gen;
    p.seed = derive_seed(base_seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(attempt));
    try {
      return prepare(generate(p), p.seed);
    } catch (const PaddingDegenerate&) {
    }
  }
  throw GenerationError(derive_seed(base_seed, static_cast<std::uint64_t>(i)),
                        "environment " + std::to_string(i) + " stayed degenerate after padding");
}

std::vector<PreparedEnv> prepare_environments(const BatchSpec& spec, int workers) {
  if (spec.n_envs < 1) throw std::invalid_argument("n_envs must be at least 1");
  std::vector<PreparedEnv> envs(static_cast<std::size_t>(spec.n_envs));
  parallel_for(envs.size(), workers,
               [&](std::size_t i) { envs[i] = prepare_environment(spec.base_seed, static_cast<int>(i), spec.gen); });
  return envs;
}

std::string_view results_header() {
  return "run_id,env_seed,algorithm,odom_sigma,p_fp,p_fn,dt_sigma,fp_mode,success,sim_time_s,path_length_m,"
         "astar_length_m,normalized_length,leave_count,reversal_count";
}

std::string format_record(const RunRecord& r) {
  std::string s;
  s += std::to_string(r.run_id);
  s += ',';
  s += std::to_string(r.env_seed);
  s += ',';
  s += to_string(r.algorithm);
  for (double v : {r.noise.odom_sigma, r.noise.p_fp, r.noise.p_fn, r.noise.dt_sigma}) {
    s += ',';
    s += format_double(v);
  }
  s += ',';
  s += to_string(r.noise.fp_mode);
  s += r.success ? ",true" : ",false";
  for (double v : {r.sim_time, r.path_length, r.astar_length, r.normalized_length}) {
    s += ',';
    s += format_double(v);
  }
  s += ',';
  s += std::to_string(r.leave_count);
  s += ',';
  s += std::to_string(r.reversal_count);
  return s;
}

namespace {

[[noreturn]] void bad_field(std::string_view name, std::string_view value) {
  throw std::runtime_error("bad " + std::string(name) + " value '" + std::string(value) + "'");
}

double field_double(std::string_view name, std::string_view v) {
  const auto d = parse_double(v);
  if (!d) bad_field(name, v);
  return *d;
}

std::uint64_t field_u64(std::string_view name, std::string_view v) {
  std::uint64_t out = 0;
  if (v.empty()) bad_field(name, v);
  for (char c : v) {
    if (c < '0' || c > '9') bad_field(name, v);
    const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (out > (UINT64_MAX - digit) / 10) bad_field(name, v);
    out = out * 10 + digit;
  }
  return out;
}

int field_int(std::string_view name, std::string_view v) {
  const auto n = parse_int(v);
  if (!n || *n < 0 || *n > INT32_MAX) bad_field(name, v);
  return static_cast<int>(*n);
}

}  // namespace

RunRecord parse_record(std::string_view line) {
  const auto f = split(line, ',');
  if (f.size() != 15) throw std::runtime_error("expected 15 fields, got " + std::to_string(f.size()));
  RunRecord r;
  r.run_id = field_u64("run_id", f[0]);
  r.env_seed = field_u64("env_seed", f[1]);
  const auto a = parse_algorithm(f[2]);
  if (!a) bad_field("algorithm", f[2]);
  r.algorithm = *a;
  r.noise.odom_sigma = field_double("odom_sigma", f[3]);
  r.noise.p_fp = field_double("p_fp", f[4]);
  r.noise.p_fn = field_double("p_fn", f[5]);
  r.noise.dt_sigma = field_double("dt_sigma", f[6]);
  const auto mode = parse_fp_mode(f[7]);
  if (!mode) bad_field("fp_mode", f[7]);
  r.noise.fp_mode = *mode;
  if (f[8] == "true")
    r.success = true;
  else if (f[8] != "false")
    bad_field("success", f[8]);
  r.sim_time = field_double("sim_time_s", f[9]);
  r.path_length = field_double("path_length_m", f[10]);
  r.astar_length = field_double("astar_length_m", f[11]);
  r.normalized_length = field_double("normalized_length", f[12]);
  r.leave_count = field_int("leave_count", f[13]);
  r.reversal_count = field_int("reversal_count", f[14]);
  r.noise.noise_seed = noise_seed_for(r.env_seed);
  return r;
}

std::vector<RunRecord> parse_results(std::string_view text) {
  std::vector<RunRecord> out;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != results_header()) throw std::runtime_error("results header does not match");
      continue;
    }
    if (line.empty()) continue;
    try {
      out.push_back(parse_record(line));
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("results line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (line_no == 0) throw std::runtime_error("results file is empty");
  return out;
}

std::string format_results(const std::vector<RunRecord>& records) {
  std::string out(results_header());
  out += '\n';
  for (const auto& r : records) {
    out += format_record(r);
    out += '\n';
  }
  return out;
}

namespace {

struct Job {
  std::size_t point;
  std::size_t env;
  std::uint64_t id;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& p, std::string_view text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed: " + p.string());
}

// Loads the complete records of an earlier run and cuts the file back to
// them, so appends continue after the last full line.
std::vector<RunRecord> load_for_resume(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    write_file(path, std::string(results_header()) + "\n");
    return {};
  }
  std::string text = read_file(path);
  const std::size_t last_newline = text.rfind('\n');
  if (last_newline == std::string::npos) {
    // Nothing complete, not even the header.
    write_file(path, std::string(results_header()) + "\n");
    return {};
  }
  text.resize(last_newline + 1);
  auto records = parse_results(text);
  write_file(path, text);
  return records;
}

std::vector<RunRecord> execute(const BatchSpec& spec, int workers, std::vector<RunRecord> done,
                               const std::function<void(const RunRecord&)>& sink) {
  const auto n_envs = static_cast<std::size_t>(spec.n_envs);
  const std::size_t total = spec.points.size() * n_envs;
  std::set<std::uint64_t> finished;
  for (const auto& r : done) {
    if (r.run_id >= total) throw std::runtime_error("results file has run_id " + std::to_string(r.run_id) +
                                                    " outside this sweep");
    if (!finished.insert(r.run_id).second)
      throw std::runtime_error("results file repeats run_id " + std::to_string(r.run_id));
    const SweepPoint& p = spec.points[r.run_id / n_envs];
    NoiseConfig n = r.noise;
    n.noise_seed = p.noise.noise_seed;
    if (r.algorithm != p.algorithm || !(n == p.noise))
      throw std::runtime_error("results file run_id " + std::to_string(r.run_id) +
                               " belongs to a different sweep");
  }

  std::vector<Job> jobs;
  for (std::size_t j = 0; j < spec.points.size(); ++j)
    for (std::size_t i = 0; i < n_envs; ++i) {
      const auto id = run_id(j, i, n_envs);
      if (!finished.count(id)) jobs.push_back({j, i, id});
    }

  if (!jobs.empty()) {
    const auto envs = prepare_environments(spec, workers);
    std::mutex out_mutex;
    parallel_for(jobs.size(), workers, [&](std::size_t k) {
      const Job& job = jobs[k];
      const PreparedEnv& env = envs[job.env];
      EpisodeConfig cfg = spec.episode;
      cfg.algorithm = spec.points[job.point].algorithm;
      cfg.noise = spec.points[job.point].noise;
      cfg.noise.noise_seed = noise_seed_for(env.seed);
      cfg.record_trace = false;
      RunRecord r = run_episode(env, cfg).record;
      r.run_id = job.id;
      std::lock_guard lock(out_mutex);
      sink(r);
      done.push_back(r);
    });
  }
  std::sort(done.begin(), done.end(), [](const RunRecord& a, const RunRecord& b) { return a.run_id < b.run_id; });
  return done;
}

}  // namespace

std::vector<RunRecord> run_batch(const BatchSpec& spec, const std::filesystem::path& results, int workers) {
  auto done = load_for_resume(results);
  std::ofstream out(results, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot append to " + results.string());
  auto records = execute(spec, workers, std::move(done), [&](const RunRecord& r) {
    out << format_record(r) << '\n';
    out.flush();
  });
  out.close();
  const std::filesystem::path tmp = results.string() + ".tmp";
  write_file(tmp, format_results(records));
  std::filesystem::rename(tmp, results);
  return records;
}

std::vector<RunRecord> run_batch(const BatchSpec& spec, int workers) {
  return execute(spec, workers, {}, [](const RunRecord&) {});
}

}  // namespace bugnav
