#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmrelay/channel.hpp"
#include "mmrelay/topology.hpp"

namespace mmrelay {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simulation configuration. Defaults reproduce the headline scenario:
// 3 pairs and 10 relays on a 1 km square, 141.4 m mean LOS range, 1 Gb
// files, mutation probability 1e-4, 1000-run batches.
struct SimConfig {
  int m = 3;
  int n = 10;
  Area area{1000.0, 1000.0};
  double beta = 1.0 / 141.4;
  ChannelParams channel;
  double file_size_bits = 1e9;
  std::vector<double> file_sizes_bits;  // optional per-pair override
  double epsilon = 1e-4;
  int max_rounds = 200;
  int runs = 1000;
  std::uint64_t master_seed = 1;
  int jobs = 1;
  std::string csv_path;
  std::string json_path;
  std::string svg_path;
  std::string trace_path;
};

inline std::vector<double> resolved_file_sizes(const SimConfig& c) {
  if (!c.file_sizes_bits.empty()) {
    if (c.file_sizes_bits.size() != static_cast<std::size_t>(c.m)) {
      throw ParseError("file_sizes_bits must list exactly one value per pair");
    }
    return c.file_sizes_bits;
  }
  return std::vector<double>(static_cast<std::size_t>(c.m), c.file_size_bits);
}

inline void validate(const SimConfig& c) {
  if (c.m < 1) throw ParseError("m must be >= 1");
  if (c.n < 0) throw ParseError("n must be >= 0");
  if (!(c.area.width > 0.0) || !(c.area.height > 0.0)) {
    throw ParseError("area dimensions must be positive");
  }
  if (!(c.beta > 0.0)) throw ParseError("beta must be positive");
  if (!(c.epsilon >= 0.0 && c.epsilon < 1.0)) throw ParseError("epsilon must be in [0, 1)");
  if (c.max_rounds < 1) throw ParseError("max_rounds must be >= 1");
  if (c.runs < 1) throw ParseError("runs must be >= 1");
  if (c.jobs < 1) throw ParseError("jobs must be >= 1");
  for (double bits : resolved_file_sizes(c)) {
    if (!(bits > 0.0)) throw ParseError("file sizes must be positive");
  }
  try {
    validate(c.channel);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

inline double parse_double(const std::string& key, const std::string& value, int line) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty()) {
    throw ParseError("line " + std::to_string(line) + ": invalid value for '" + key +
                     "': " + value);
  }
  return out;
}

inline long long parse_int(const std::string& key, const std::string& value, int line) {
  const double d = parse_double(key, value, line);
  const auto i = static_cast<long long>(d);
  if (static_cast<double>(i) != d) {
    throw ParseError("line " + std::to_string(line) + ": '" + key + "' must be an integer");
  }
  return i;
}

inline std::vector<double> parse_double_list(const std::string& key, const std::string& value,
                                             int line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    const std::string item =
        trim(value.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    out.push_back(parse_double(key, item, line));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

// Applies one `key = value` assignment. Unknown keys are rejected.
inline void apply_key_value(SimConfig& c, const std::string& key, const std::string& value,
                            int line) {
  using detail::parse_double;
  using detail::parse_double_list;
  using detail::parse_int;
  if (key == "m") {
    c.m = static_cast<int>(parse_int(key, value, line));
  } else if (key == "n") {
    c.n = static_cast<int>(parse_int(key, value, line));
  } else if (key == "area_width_m") {
    c.area.width = parse_double(key, value, line);
  } else if (key == "area_height_m") {
    c.area.height = parse_double(key, value, line);
  } else if (key == "beta") {
    c.beta = parse_double(key, value, line);
  } else if (key == "los_range_m") {
    const double range = parse_double(key, value, line);
    if (!(range > 0.0)) {
      throw ParseError("line " + std::to_string(line) + ": los_range_m must be positive");
    }
    c.beta = 1.0 / range;
  } else if (key == "epsilon") {
    const double eps = parse_double(key, value, line);
    if (!(eps >= 0.0 && eps < 1.0)) {
      throw ParseError("line " + std::to_string(line) + ": epsilon must be in [0, 1)");
    }
    c.epsilon = eps;
  } else if (key == "max_rounds") {
    c.max_rounds = static_cast<int>(parse_int(key, value, line));
  } else if (key == "runs") {
    c.runs = static_cast<int>(parse_int(key, value, line));
  } else if (key == "master_seed") {
    c.master_seed = static_cast<std::uint64_t>(parse_int(key, value, line));
  } else if (key == "jobs") {
    c.jobs = static_cast<int>(parse_int(key, value, line));
  } else if (key == "file_size_bits") {
    c.file_size_bits = parse_double(key, value, line);
    c.file_sizes_bits.clear();
  } else if (key == "file_sizes_bits") {
    c.file_sizes_bits = parse_double_list(key, value, line);
  } else if (key == "a_los") {
    c.channel.a_los = parse_double(key, value, line);
  } else if (key == "alpha_los") {
    c.channel.alpha_los = parse_double(key, value, line);
  } else if (key == "a_nlos") {
    c.channel.a_nlos = parse_double(key, value, line);
  } else if (key == "alpha_nlos") {
    c.channel.alpha_nlos = parse_double(key, value, line);
  } else if (key == "m_t") {
    c.channel.m_t = parse_double(key, value, line);
  } else if (key == "m_r") {
    c.channel.m_r = parse_double(key, value, line);
  } else if (key == "p_t_watts") {
    c.channel.p_t = parse_double(key, value, line);
  } else if (key == "n0_dbm") {
    c.channel.n0 = dbm_to_watts(parse_double(key, value, line));
  } else if (key == "bandwidth_hz") {
    c.channel.w = parse_double(key, value, line);
  } else if (key == "csv_path") {
    c.csv_path = value;
  } else if (key == "json_path") {
    c.json_path = value;
  } else if (key == "svg_path") {
    c.svg_path = value;
  } else if (key == "trace_path") {
    c.trace_path = value;
  } else {
    throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
  }
}

// Line-oriented `key = value` file; '#' starts a comment, blank lines are
// ignored. Values assign onto `base` in file order.
inline SimConfig parse_config_file(const std::string& path, SimConfig base = SimConfig{}) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string text = detail::trim(raw);
    if (text.empty()) continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line) + ": expected 'key = value'");
    }
    const std::string key = detail::trim(text.substr(0, eq));
    const std::string value = detail::trim(text.substr(eq + 1));
    if (key.empty()) {
      throw ParseError("line " + std::to_string(line) + ": empty key");
    }
    apply_key_value(base, key, value, line);
  }
  return base;
}

}  // namespace mmrelay
