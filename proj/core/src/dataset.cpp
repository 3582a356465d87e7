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

#include "vesselseg/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "vesselseg/image_io.hpp"

namespace vesselseg {

namespace fs = std::filesystem;

DatasetLayout parse_layout(const std::string& name) {
  if (name == "drive") return DatasetLayout::Drive;
  if (name == "stare") return DatasetLayout::Stare;
  if (name == "flat") return DatasetLayout::Flat;
  throw std::invalid_argument("unknown dataset layout '" + name +
                              "' (expected drive, stare or flat)");
}

namespace {

std::vector<fs::path> list_images(const fs::path& dir) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) return files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && supported_image_file(entry.path())) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

// Leading digit run of the stem ("21_training" -> "21").
std::string digit_key(const fs::path& path) {
  const std::string stem = path.stem().string();
  std::string key;
  for (char c : stem) {
    if (!std::isdigit(static_cast<unsigned char>(c))) break;
    key.push_back(c);
  }
  return key;
}

// Stem up to the first dot ("im0001.ah" -> "im0001").
std::string dot_key(const fs::path& path) {
  const std::string name = path.filename().string();
  return name.substr(0, name.find('.'));
}

std::vector<DatasetRecord> load_paired(
    const fs::path& image_dir, const fs::path& truth_dir,
    const fs::path& fov_dir, std::string (*key_of)(const fs::path&)) {
  std::map<std::string, fs::path> truths;
  for (const fs::path& p : list_images(truth_dir)) {
    truths.emplace(key_of(p), p);
  }
  std::map<std::string, fs::path> fovs;
  for (const fs::path& p : list_images(fov_dir)) {
    fovs.emplace(key_of(p), p);
  }

  std::vector<DatasetRecord> records;
  for (const fs::path& img : list_images(image_dir)) {
    DatasetRecord rec;
    rec.id = img.stem().string();
    rec.image = img;
    const std::string key = key_of(img);
    if (!key.empty()) {
      if (auto it = truths.find(key); it != truths.end()) rec.truth = it->second;
      if (auto it = fovs.find(key); it != fovs.end()) rec.fov = it->second;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<DatasetRecord> load_flat(const fs::path& root) {
  std::map<std::string, fs::path> truths;
  std::map<std::string, fs::path> fovs;
  std::vector<fs::path> images;
  for (const fs::path& p : list_images(root)) {
    const std::string stem = p.stem().string();
    if (ends_with(stem, ".truth")) {
      truths.emplace(stem.substr(0, stem.size() - 6), p);
    } else if (ends_with(stem, ".fov")) {
      fovs.emplace(stem.substr(0, stem.size() - 4), p);
    } else {
      images.push_back(p);
    }
  }
  std::vector<DatasetRecord> records;
  for (const fs::path& img : images) {
    DatasetRecord rec;
    rec.id = img.stem().string();
    rec.image = img;
    if (auto it = truths.find(rec.id); it != truths.end()) rec.truth = it->second;
    if (auto it = fovs.find(rec.id); it != fovs.end()) rec.fov = it->second;
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

std::vector<DatasetRecord> load_dataset(const fs::path& root,
                                        DatasetLayout layout) {
  if (!fs::is_directory(root)) {
    throw std::invalid_argument("dataset root is not a directory: " +
                                root.string());
  }
  std::vector<DatasetRecord> records;
  switch (layout) {
    case DatasetLayout::Drive:
      records = load_paired(root / "images", root / "1st_manual",
                            root / "mask", digit_key);
      break;
    case DatasetLayout::Stare:
      // No fov files in this layout; the mask is computed downstream.
      records = load_paired(root / "images", root / "labels", {}, dot_key);
      break;
    case DatasetLayout::Flat:
      records = load_flat(root);
      break;
  }
  std::sort(records.begin(), records.end(),
            [](const DatasetRecord& a, const DatasetRecord& b) {
              return a.id < b.id;
            });
  return records;
}

}  // namespace vesselseg
