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

#ifndef VESSELSEG_CONFIG_HPP
#define VESSELSEG_CONFIG_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "vesselseg/entropic.hpp"
#include "vesselseg/preprocess.hpp"

namespace vesselseg {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Every tunable of the pipeline in one place. Serializable to a flat
/// `key = value` file ('#' starts a comment); command line flags override
/// file values.
struct RunConfig {
  PreprocessConfig pre;

  double thickness = 6.0;            ///< gabor t
  double beta = 0.5;                 ///< gabor beta, [0.5, 1]
  double orientation_step = 15.0;    ///< degrees between bank orientations
  double kernel_sigma_mult = 3.0;    ///< half extent = ceil(mult * sigma_x)

  int levels = 256;                  ///< quantization levels, [2, 256]
  TieBreak tie_break = TieBreak::Smallest;

  int roc_step = 5;                  ///< quantized levels between ROC points
  bool fov_restricted = true;        ///< score inside the fov mask only
  bool invert = false;               ///< invert enhanced image (dark vessels)

  std::filesystem::path out_dir = "out";
  int threads = 0;                   ///< 0 = logical processor count
  std::vector<std::string> exclude;  ///< record ids to skip

  void validate() const;
};

/// Parses a config file. Unknown keys and malformed values are ConfigError.
RunConfig load_run_config(const std::filesystem::path& path);

/// Applies one `key = value` assignment (the file format's line payload).
void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value);

/// Writes every field back out in the same format; load(save(cfg)) == cfg.
void save_run_config(const std::filesystem::path& path, const RunConfig& cfg);

}  // namespace vesselseg

#endif  // VESSELSEG_CONFIG_HPP
