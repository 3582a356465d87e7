// Copyright 2026 The vesselseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vesselseg/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace vesselseg {

void RunConfig::validate() const {
  pre.validate();
  if (!(thickness >= 1.0)) throw ConfigError("t must be >= 1");
  if (!(beta >= 0.5 && beta <= 1.0)) throw ConfigError("beta must lie in [0.5, 1]");
  if (!(orientation_step > 0.0 && orientation_step <= 180.0)) {
    throw ConfigError("orientation_step must lie in (0, 180]");
  }
  if (!(kernel_sigma_mult > 0.0)) throw ConfigError("kernel_sigma_mult must be positive");
  if (levels < 2 || levels > 256) throw ConfigError("levels must lie in [2, 256]");
  if (roc_step < 1) throw ConfigError("roc_step must be >= 1");
  if (threads < 0) throw ConfigError("threads must be >= 0");
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

int to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": '" + value + "'");
  }
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(v)) {
      throw std::invalid_argument(value);
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("bad boolean for " + key + ": '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "mask_threshold") cfg.pre.mask_threshold = to_int(key, value);
  else if (key == "prefilter_side") cfg.pre.prefilter_side = to_int(key, value);
  else if (key == "clahe_tile") cfg.pre.clahe_tile = to_int(key, value);
  else if (key == "clahe_clip") cfg.pre.clahe_clip = to_double(key, value);
  else if (key == "t") cfg.thickness = to_double(key, value);
  else if (key == "beta") cfg.beta = to_double(key, value);
  else if (key == "orientation_step") cfg.orientation_step = to_double(key, value);
  else if (key == "kernel_sigma_mult") cfg.kernel_sigma_mult = to_double(key, value);
  else if (key == "levels") cfg.levels = to_int(key, value);
  else if (key == "tie_break") {
    if (value == "smallest") cfg.tie_break = TieBreak::Smallest;
    else if (value == "largest") cfg.tie_break = TieBreak::Largest;
    else throw ConfigError("tie_break must be 'smallest' or 'largest'");
  }
  else if (key == "roc_step") cfg.roc_step = to_int(key, value);
  else if (key == "fov_restricted") cfg.fov_restricted = to_bool(key, value);
  else if (key == "invert") cfg.invert = to_bool(key, value);
  else if (key == "out_dir") cfg.out_dir = value;
  else if (key == "threads") cfg.threads = to_int(key, value);
  else if (key == "exclude") cfg.exclude = split_list(value);
  else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

void save_run_config(const std::filesystem::path& path, const RunConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot create config file " + path.string());
  char buf[64];
  const auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "mask_threshold = " << cfg.pre.mask_threshold << "\n"
      << "prefilter_side = " << cfg.pre.prefilter_side << "\n"
      << "clahe_tile = " << cfg.pre.clahe_tile << "\n"
      << "clahe_clip = " << num(cfg.pre.clahe_clip) << "\n"
      << "t = " << num(cfg.thickness) << "\n"
      << "beta = " << num(cfg.beta) << "\n"
      << "orientation_step = " << num(cfg.orientation_step) << "\n"
      << "kernel_sigma_mult = " << num(cfg.kernel_sigma_mult) << "\n"
      << "levels = " << cfg.levels << "\n"
      << "tie_break = "
      << (cfg.tie_break == TieBreak::Smallest ? "smallest" : "largest") << "\n"
      << "roc_step = " << cfg.roc_step << "\n"
      << "fov_restricted = " << (cfg.fov_restricted ? "true" : "false") << "\n"
      << "invert = " << (cfg.invert ? "true" : "false") << "\n"
      << "out_dir = " << cfg.out_dir.string() << "\n"
      << "threads = " << cfg.threads << "\n";
  out << "exclude =";
  for (std::size_t i = 0; i < cfg.exclude.size(); ++i) {
    out << (i ? "," : " ") << cfg.exclude[i];
  }
  out << "\n";
  if (!out) throw ConfigError("write failed: " + path.string());
}

}  // namespace vesselseg
