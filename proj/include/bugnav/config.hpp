#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bugnav/batch.hpp"

namespace bugnav {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& key, const std::string& what)
      : std::runtime_error("config line " + std::to_string(line) + (key.empty() ? "" : ", key '" + key + "'") +
                           ": " + what),
        key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Sweep description. Text format, one `key = value` per line, `#` starts a
/// comment:
///
///   envs = 200            # global keys come before any section
///   seed = 1
///   [odometry]            # each section is one grid
///   algorithms = com, bug2
///   odom_sigma = 0, 0.05, 0.1
///
/// Global keys: envs, seed, time_limit, goal_radius, p_str, t_cor,
/// arena_size, cell_size, room_split_max.
/// Section keys (comma lists): algorithms, odom_sigma, p_fp, p_fn, dt_sigma,
/// fp_mode. A section expands to the Cartesian product of its lists (absent
/// keys take the noiseless default); points repeated by later sections are
/// dropped.
struct SweepConfig {
  BatchSpec batch;
  std::vector<std::string> sections;
};

SweepConfig parse_config(std::string_view text);

/// Built-in sweeps: fig11_noiseless, fig12_odometry, fig14_fp_fn, fig15_dt.
std::vector<std::string_view> preset_names();
/// Throws std::invalid_argument for an unknown name.
std::string_view preset_text(std::string_view name);

/// The resolved grid, one point per line, in run order.
std::string describe_grid(const BatchSpec& spec);

}  // namespace bugnav
