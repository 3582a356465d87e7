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

#include "vesselseg/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "vesselseg/raster.hpp"

namespace vesselseg {

void PreprocessConfig::validate() const {
  if (mask_threshold < 0 || mask_threshold > 255) {
    throw std::invalid_argument("PreprocessConfig: mask_threshold outside [0, 255]");
  }
  if (prefilter_side < 1 || prefilter_side % 2 == 0) {
    throw std::invalid_argument("PreprocessConfig: prefilter_side must be odd");
  }
  if (clahe_tile != 0 && clahe_tile < 2) {
    throw std::invalid_argument("PreprocessConfig: clahe_tile must be >= 2 (or 0 for auto)");
  }
  if (!(clahe_clip >= 1.0)) {
    throw std::invalid_argument("PreprocessConfig: clahe_clip must be >= 1");
  }
}

GrayImage8 extract_green(const FundusImage& img) {
  img.validate();
  return img.green;
}

namespace {

using TileMap = std::array<std::uint8_t, 256>;

TileMap equalization_map(const std::array<std::int64_t, 256>& hist,
                         std::int64_t area, double clip) {
  std::array<std::int64_t, 256> h = hist;
  const auto clip_at = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(clip * static_cast<double>(area) / 256.0));
  std::int64_t excess = 0;
  for (auto& bin : h) {
    if (bin > clip_at) {
      excess += bin - clip_at;
      bin = clip_at;
    }
  }
  const std::int64_t base = excess / 256;
  const std::int64_t rem = excess % 256;
  for (int i = 0; i < 256; ++i) h[i] += base + (i < rem ? 1 : 0);

  TileMap map{};
  std::int64_t cdf = 0;
  for (int i = 0; i < 256; ++i) {
    cdf += h[i];
    const double target =
        std::floor(255.0 * static_cast<double>(cdf) / static_cast<double>(area) + 0.5);
    map[i] = static_cast<std::uint8_t>(std::clamp(target, 0.0, 255.0));
  }
  return map;
}

// Locates the interpolation segment for coordinate v among sorted tile
// centers; returns (lower index, blend fraction), clamped at the ends so
// border regions use the nearest tile's mapping unmixed.
std::pair<int, double> locate(const std::vector<double>& centers, int v) {
  const int n = static_cast<int>(centers.size());
  if (n == 1 || v <= centers.front()) return {0, 0.0};
  if (v >= centers.back()) return {n - 2, 1.0};
  int k = 0;
  while (v > centers[k + 1]) ++k;
  return {k, (v - centers[k]) / (centers[k + 1] - centers[k])};
}

}  // namespace

GrayImage8 clahe_grid(const GrayImage8& img, int tiles_x, int tiles_y,
                      double clip) {
  if (img.empty()) throw std::invalid_argument("clahe: empty image");
  if (tiles_x < 1 || tiles_y < 1) {
    throw std::invalid_argument("clahe: tile grid must be at least 1x1");
  }
  if (!(clip >= 1.0)) throw std::invalid_argument("clahe: clip must be >= 1");
  const int w = img.width();
  const int h = img.height();
  if (tiles_x > w || tiles_y > h) {
    throw std::invalid_argument("clahe: more tiles than pixels");
  }

  std::vector<int> xb(tiles_x + 1);
  std::vector<int> yb(tiles_y + 1);
  for (int k = 0; k <= tiles_x; ++k) xb[k] = static_cast<int>((static_cast<std::int64_t>(k) * w) / tiles_x);
  for (int k = 0; k <= tiles_y; ++k) yb[k] = static_cast<int>((static_cast<std::int64_t>(k) * h) / tiles_y);

  std::vector<TileMap> maps(static_cast<std::size_t>(tiles_x) * tiles_y);
  for (int ty = 0; ty < tiles_y; ++ty) {
    for (int tx = 0; tx < tiles_x; ++tx) {
      std::array<std::int64_t, 256> hist{};
      for (int y = yb[ty]; y < yb[ty + 1]; ++y) {
        const auto row = img.row(y);
        for (int x = xb[tx]; x < xb[tx + 1]; ++x) ++hist[row[x]];
      }
      const std::int64_t area =
          static_cast<std::int64_t>(yb[ty + 1] - yb[ty]) * (xb[tx + 1] - xb[tx]);
      maps[static_cast<std::size_t>(ty) * tiles_x + tx] =
          equalization_map(hist, area, clip);
    }
  }

  std::vector<double> cx(tiles_x);
  std::vector<double> cy(tiles_y);
  for (int k = 0; k < tiles_x; ++k) cx[k] = (xb[k] + xb[k + 1] - 1) / 2.0;
  for (int k = 0; k < tiles_y; ++k) cy[k] = (yb[k] + yb[k + 1] - 1) / 2.0;

  GrayImage8 out(w, h);
  for (int y = 0; y < h; ++y) {
    const auto [ty, fy] = locate(cy, y);
    const auto src = img.row(y);
    auto dst = out.row(y);
    const int ty1 = std::min(ty + 1, tiles_y - 1);
    for (int x = 0; x < w; ++x) {
      const auto [tx, fx] = locate(cx, x);
      const int tx1 = std::min(tx + 1, tiles_x - 1);
      const int v = src[x];
      const double top =
          (1.0 - fx) * maps[static_cast<std::size_t>(ty) * tiles_x + tx][v] +
          fx * maps[static_cast<std::size_t>(ty) * tiles_x + tx1][v];
      const double bot =
          (1.0 - fx) * maps[static_cast<std::size_t>(ty1) * tiles_x + tx][v] +
          fx * maps[static_cast<std::size_t>(ty1) * tiles_x + tx1][v];
      const double blended = (1.0 - fy) * top + fy * bot;
      dst[x] = static_cast<std::uint8_t>(
          std::clamp(std::floor(blended + 0.5), 0.0, 255.0));
    }
  }
  return out;
}

GrayImage8 clahe(const GrayImage8& img, int tile_px, double clip) {
  if (tile_px < 2) {
    throw std::invalid_argument("clahe: tile side must be >= 2 pixels");
  }
  const int tiles_x = std::max(1, (img.width() + tile_px - 1) / tile_px);
  const int tiles_y = std::max(1, (img.height() + tile_px - 1) / tile_px);
  return clahe_grid(img, tiles_x, tiles_y, clip);
}

GrayImage8 equalize_hist(const GrayImage8& img) {
  if (img.empty()) throw std::invalid_argument("equalize_hist: empty image");
  std::array<std::int64_t, 256> hist{};
  for (std::uint8_t v : img.data()) ++hist[v];
  TileMap map{};
  std::int64_t cdf = 0;
  const auto area = static_cast<std::int64_t>(img.pixel_count());
  for (int i = 0; i < 256; ++i) {
    cdf += hist[i];
    map[i] = static_cast<std::uint8_t>(std::clamp(
        std::floor(255.0 * static_cast<double>(cdf) / static_cast<double>(area) + 0.5),
        0.0, 255.0));
  }
  GrayImage8 out(img.width(), img.height());
  for (std::size_t i = 0; i < img.data().size(); ++i) {
    out.data()[i] = map[img.data()[i]];
  }
  return out;
}

BinaryMask fundus_mask(const GrayImage8& green, const PreprocessConfig& cfg) {
  cfg.validate();
  const int w = green.width();
  const int h = green.height();

  GrayImage8 thresholded(w, h);
  for (std::size_t i = 0; i < green.data().size(); ++i) {
    thresholded.data()[i] = green.data()[i] > cfg.mask_threshold ? 1 : 0;
  }
  const GrayImage8 denoised = median_filter(thresholded, 5);

  BinaryMask mask(w, h);
  for (std::size_t i = 0; i < denoised.data().size(); ++i) {
    mask.data()[i] = denoised.data()[i] ? 1 : 0;
  }
  return erode(mask, StructuringElement(5));
}

Preprocessed preprocess(const FundusImage& img, const PreprocessConfig& cfg) {
  img.validate();
  cfg.validate();
  const GrayImage8 green = extract_green(img);
  const GrayImage8 filtered = median_filter(green, cfg.prefilter_side);

  Preprocessed out;
  if (cfg.clahe_tile == 0) {
    const int tiles_x = std::min(8, filtered.width());
    const int tiles_y = std::min(8, filtered.height());
    out.enhanced = clahe_grid(filtered, tiles_x, tiles_y, cfg.clahe_clip);
  } else {
    out.enhanced = clahe(filtered, cfg.clahe_tile, cfg.clahe_clip);
  }
  out.fov = fundus_mask(green, cfg);
  return out;
}

}  // namespace vesselseg
