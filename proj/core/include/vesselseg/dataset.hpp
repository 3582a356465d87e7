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

#ifndef VESSELSEG_DATASET_HPP
#define VESSELSEG_DATASET_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vesselseg {

enum class DatasetLayout { Drive, Stare, Flat };

DatasetLayout parse_layout(const std::string& name);  // "drive"|"stare"|"flat"

struct DatasetRecord {
  std::string id;
  std::filesystem::path image;
  std::optional<std::filesystem::path> truth;
  std::optional<std::filesystem::path> fov;
};

/// Scans a dataset directory and pairs images with ground truth and
/// field-of-view masks. Records come back sorted by id. Only decodable
/// formats are considered; an image without a matching truth or fov simply
/// leaves that field empty (commands that need truth reject such records
/// one by one).
///
/// Layouts:
///   drive - <root>/images, <root>/1st_manual (truth), <root>/mask (fov);
///           files pair on the leading digit token of the stem, e.g.
///           images/21_training.tif with 1st_manual/21_manual1.png.
///   stare - <root>/images and <root>/labels; files pair on the leading
///           dot-separated token, e.g. images/im0001.ppm with
///           labels/im0001.ah.ppm. No fov files (computed downstream).
///   flat  - every <stem>.<ext> in <root> is an image unless stem ends in
///           ".truth" or ".fov"; <stem>.truth.<ext> / <stem>.fov.<ext>
///           attach to it.
std::vector<DatasetRecord> load_dataset(const std::filesystem::path& root,
                                        DatasetLayout layout);

}  // namespace vesselseg

#endif  // VESSELSEG_DATASET_HPP
