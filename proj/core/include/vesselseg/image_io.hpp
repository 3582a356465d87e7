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

#ifndef VESSELSEG_IMAGE_IO_HPP
#define VESSELSEG_IMAGE_IO_HPP

#include <filesystem>

#include "vesselseg/image.hpp"
#include "vesselseg/preprocess.hpp"

namespace vesselseg {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// True for extensions this module can decode (.png, .ppm, .pgm, .pbm,
/// .tif, .tiff). GIF in particular is not supported.
bool supported_image_file(const std::filesystem::path& path);

/// Loads an 8-bit image as three planes; grayscale sources are replicated
/// across channels. Format is chosen by extension.
FundusImage load_fundus(const std::filesystem::path& path);

/// Loads an 8-bit single-channel image; color sources use the green plane.
GrayImage8 load_gray(const std::filesystem::path& path);

/// Loads a mask: any pixel with a nonzero sample in any channel is set.
BinaryMask load_mask(const std::filesystem::path& path);

void save_png(const std::filesystem::path& path, const GrayImage8& img);
void save_png(const std::filesystem::path& path, const FundusImage& img);

/// Masks are written as 0 / 255 PNG.
void save_png(const std::filesystem::path& path, const BinaryMask& mask);

void save_ppm(const std::filesystem::path& path, const GrayImage8& img);
void save_tiff(const std::filesystem::path& path, const GrayImage8& img);

}  // namespace vesselseg

#endif  // VESSELSEG_IMAGE_IO_HPP
