#include "bugnav/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bugnav/text.hpp"

namespace bugnav {

namespace {

constexpr std::string_view kFig11 = R"(# Noiseless comparison of all six controllers.
envs = 200
seed = 1

[noiseless]
algorithms = wf, com, com1, bug2, alg1, alg2
)";

constexpr std::string_view kFig12 = R"(# Odometry drift: per-second velocity noise.
envs = 200
seed = 1

[odometry]
algorithms = com, com1, bug2, alg1, alg2
odom_sigma = 0, 0.05, 0.1, 0.15, 0.2
)";

constexpr std::string_view kFig14 = R"(# Hit-point recognition failures.
envs = 200
seed = 1

[false_positive]
algorithms = alg1, alg2
fp_mode = per_episode
p_fp = 0, 0.005, 0.025, 0.1, 0.25, 0.5, 1

[false_negative]
algorithms = alg1, alg2
p_fn = 0, 0.25, 0.5, 0.75, 1

# Controllers without a hit-point list, for the p_fn = 1 comparison.
[reference]
algorithms = com1, bug2
)";

constexpr std::string_view kFig15 = R"(# Noise on the distance-to-target channel.
envs = 200
seed = 1

[distance]
algorithms = com1, alg2
dt_sigma = 0, 1, 2, 3, 4, 5, 6

[reference]
algorithms = com
)";

const std::map<std::string_view, std::string_view>& presets() {
  static const std::map<std::string_view, std::string_view> m = {
      {"fig11_noiseless", kFig11},
      {"fig12_odometry", kFig12},
      {"fig14_fp_fn", kFig14},
      {"fig15_dt", kFig15},
  };
  return m;
}

struct Section {
  std::string name;
  int line = 0;
  std::map<std::string, std::pair<int, std::vector<std::string>>> lists;
};

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  for (auto item : split(v, ',')) out.emplace_back(trim(item));
  return out;
}

double number(int line, const std::string& key, std::string_view v) {
  const auto d = parse_double(v);
  if (!d || !std::isfinite(*d)) throw ConfigError(line, key, "not a number: '" + std::string(v) + "'");
  return *d;
}

long long integer(int line, const std::string& key, std::string_view v) {
  const auto n = parse_int(v);
  if (!n) throw ConfigError(line, key, "not an integer: '" + std::string(v) + "'");
  return *n;
}

void set_global(BatchSpec& b, int line, const std::string& key, std::string_view v) {
  if (key == "envs") {
    const auto n = integer(line, key, v);
    if (n < 1 || n > 1000000) throw ConfigError(line, key, "must be between 1 and 1000000");
    b.n_envs = static_cast<int>(n);
  } else if (key == "seed") {
    const auto n = integer(line, key, v);
    if (n < 0) throw ConfigError(line, key, "must be non-negative");
    b.base_seed = static_cast<std::uint64_t>(n);
  } else if (key == "time_limit") {
    b.episode.time_limit = number(line, key, v);
    if (!(b.episode.time_limit > 0.0)) throw ConfigError(line, key, "must be positive");
  } else if (key == "goal_radius") {
    b.episode.goal_radius = number(line, key, v);
    if (!(b.episode.goal_radius > 0.0)) throw ConfigError(line, key, "must be positive");
  } else if (key == "p_str") {
    b.gen.p_str = number(line, key, v);
  } else if (key == "t_cor") {
    b.gen.t_cor = number(line, key, v);
  } else if (key == "arena_size") {
    b.gen.arena_size = number(line, key, v);
  } else if (key == "cell_size") {
    b.gen.cell_size = number(line, key, v);
  } else if (key == "room_split_max") {
    b.gen.room_split_max = static_cast<int>(integer(line, key, v));
  } else {
    throw ConfigError(line, key, "unknown key");
  }
  try {
    b.gen.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(line, key, e.what());
  }
}

const std::vector<std::string> kSectionKeys = {"algorithms", "odom_sigma", "p_fp", "p_fn", "dt_sigma", "fp_mode"};

std::vector<double> numbers(const Section& s, const std::string& key) {
  const auto it = s.lists.find(key);
  if (it == s.lists.end()) return {0.0};
  std::vector<double> out;
  for (const auto& v : it->second.second) out.push_back(number(it->second.first, key, v));
  return out;
}

void expand(const Section& s, std::vector<SweepPoint>& points) {
  const auto alg_it = s.lists.find("algorithms");
  if (alg_it == s.lists.end()) throw ConfigError(s.line, "algorithms", "missing in section [" + s.name + "]");
  std::vector<Algorithm> algs;
  for (const auto& v : alg_it->second.second) {
    const auto a = parse_algorithm(v);
    if (!a) throw ConfigError(alg_it->second.first, "algorithms", "unknown algorithm '" + v + "'");
    algs.push_back(*a);
  }
  std::vector<FpMode> modes = {FpMode::PerTick};
  if (const auto it = s.lists.find("fp_mode"); it != s.lists.end()) {
    modes.clear();
    for (const auto& v : it->second.second) {
      const auto m = parse_fp_mode(v);
      if (!m) throw ConfigError(it->second.first, "fp_mode", "expected per_tick or per_episode, got '" + v + "'");
      modes.push_back(*m);
    }
  }
  const auto odom = numbers(s, "odom_sigma");
  const auto fp = numbers(s, "p_fp");
  const auto fn = numbers(s, "p_fn");
  const auto dts = numbers(s, "dt_sigma");
  for (Algorithm a : algs)
    for (FpMode m : modes)
      for (double o : odom)
        for (double f : fp)
          for (double n : fn)
            for (double d : dts) {
              SweepPoint p;
              p.algorithm = a;
              p.noise.odom_sigma = o;
              p.noise.p_fp = f;
              p.noise.p_fn = n;
              p.noise.dt_sigma = d;
              p.noise.fp_mode = f == 0.0 ? FpMode::PerTick : m;  // mode is moot without false positives
              try {
                p.noise.validate();
              } catch (const std::invalid_argument& e) {
                throw ConfigError(s.line, "", "section [" + s.name + "]: " + e.what());
              }
              if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(p);
            }
}

}  // namespace

SweepConfig parse_config(std::string_view text) {
  SweepConfig cfg;
  std::vector<Section> sections;
  int line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw ConfigError(line_no, "", "malformed section header");
      Section s;
      s.name = std::string(trim(line.substr(1, line.size() - 2)));
      s.line = line_no;
      for (const auto& other : sections)
        if (other.name == s.name) throw ConfigError(line_no, "", "duplicate section [" + s.name + "]");
      sections.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "", "empty key");
    if (value.empty()) throw ConfigError(line_no, key, "empty value");
    if (sections.empty()) {
      set_global(cfg.batch, line_no, key, value);
      continue;
    }
    if (std::find(kSectionKeys.begin(), kSectionKeys.end(), key) == kSectionKeys.end())
      throw ConfigError(line_no, key, "unknown key in section [" + sections.back().name + "]");
    auto& lists = sections.back().lists;
    if (lists.count(key)) throw ConfigError(line_no, key, "given twice");
    auto items = split_list(value);
    for (const auto& item : items)
      if (item.empty()) throw ConfigError(line_no, key, "empty list item");
    lists[key] = {line_no, std::move(items)};
  }
  if (sections.empty()) throw ConfigError(line_no, "", "no sections; nothing to run");
  for (const auto& s : sections) {
    expand(s, cfg.batch.points);
    cfg.sections.push_back(s.name);
  }
  return cfg;
}

std::vector<std::string_view> preset_names() {
  std::vector<std::string_view> out;
  for (const auto& [name, text] : presets()) out.push_back(name);
  return out;
}

std::string_view preset_text(std::string_view name) {
  const auto it = presets().find(name);
  if (it == presets().end()) throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  return it->second;
}

std::string describe_grid(const BatchSpec& spec) {
  std::string out;
  for (std::size_t j = 0; j < spec.points.size(); ++j) {
    const auto& p = spec.points[j];
    out += "point " + std::to_string(j) + ": algorithm=" + std::string(to_string(p.algorithm)) +
           " odom_sigma=" + format_double(p.noise.odom_sigma) + " p_fp=" + format_double(p.noise.p_fp) +
           " p_fn=" + format_double(p.noise.p_fn) + " dt_sigma=" + format_double(p.noise.dt_sigma) +
           " fp_mode=" + std::string(to_string(p.noise.fp_mode)) + " run_ids=" +
           std::to_string(run_id(j, 0, static_cast<std::size_t>(spec.n_envs))) + ".." +
           std::to_string(run_id(j, static_cast<std::size_t>(spec.n_envs) - 1, static_cast<std::size_t>(spec.n_envs))) +
           "\n";
  }
  return out;
}

}  // namespace bugnav
