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

#ifndef VESSELSEG_PREPROCESS_HPP
#define VESSELSEG_PREPROCESS_HPP

#include "vesselseg/image.hpp"

namespace vesselseg {

/// 3-channel 8-bit color raster, the raw dataset input.
struct FundusImage {
  GrayImage8 red;
  GrayImage8 green;
  GrayImage8 blue;

  int width() const { return green.width(); }
  int height() const { return green.height(); }

  void validate() const {
    if (green.empty() || !red.same_size(green.width(), green.height()) ||
        !blue.same_size(green.width(), green.height())) {
      throw std::invalid_argument("FundusImage: channel dimensions differ");
    }
  }
};

struct PreprocessConfig {
  int mask_threshold = 20;   ///< gray level separating fundus from surround
  int prefilter_side = 3;    ///< median window before contrast enhancement
  int clahe_tile = 0;        ///< tile side in px; 0 = auto (8 x 8 tile grid)
  double clahe_clip = 3.0;   ///< histogram clip as a multiple of the mean bin

  void validate() const;
};

/// The green plane, verbatim.
GrayImage8 extract_green(const FundusImage& img);

/// Contrast-limited adaptive histogram equalization on a tiles_x x tiles_y
/// grid. Each tile's histogram is clipped at clip * (tile_area / 256), the
/// clipped excess is spread uniformly over all bins (first excess mod 256
/// bins take the remainder), and the tile mapping is
///
///   map[v] = round(255 * cdf[v] / tile_area)
///
/// Output pixels bilinearly blend the four surrounding tile mappings;
/// outside the hull of tile centers the nearest mapping applies unmixed.
GrayImage8 clahe_grid(const GrayImage8& img, int tiles_x, int tiles_y,
                      double clip);

/// clahe_grid with the grid derived from a tile side in pixels
/// (ceil(width / tile) x ceil(height / tile) tiles). tile_px must be >= 2.
GrayImage8 clahe(const GrayImage8& img, int tile_px, double clip);

/// Plain global histogram equalization. Not part of the pipeline; kept as a
/// comparison path for the CLI.
GrayImage8 equalize_hist(const GrayImage8& img);

/// Field-of-view mask: erode(median_5x5(green > mask_threshold)) with a
/// 5x5 structuring element. Ones mark fundus, zeros the dark surround.
BinaryMask fundus_mask(const GrayImage8& green, const PreprocessConfig& cfg);

struct Preprocessed {
  GrayImage8 enhanced;
  BinaryMask fov;
};

/// Full stage-2 pipeline: median prefilter then CLAHE on the green channel,
/// plus the field-of-view mask computed from the unfiltered green channel.
Preprocessed preprocess(const FundusImage& img, const PreprocessConfig& cfg);

}  // namespace vesselseg

#endif  // VESSELSEG_PREPROCESS_HPP
