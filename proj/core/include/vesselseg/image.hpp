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

#ifndef VESSELSEG_IMAGE_HPP
#define VESSELSEG_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace vesselseg {

/// Dense row-major raster. Pixels are addressed as (x, y) with x running
/// rightward along a row and y downward across rows, both zero-based.
template <typename T>
class Image {
 public:
  Image() = default;

  Image(int width, int height, T fill = T{})
      : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
      throw std::invalid_argument("Image: dimensions must be positive");
    }
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }
  std::size_t pixel_count() const { return data_.size(); }

  T operator()(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  T& operator()(int x, int y) {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const T> row(int y) const {
    return {data_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::span<T> row(int y) {
    return {data_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  bool same_size(int w, int h) const { return width_ == w && height_ == h; }

  friend bool operator==(const Image& a, const Image& b) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

/// 8-bit gray raster, values in [0, 255] (or [0, L-1] after quantization).
using GrayImage8 = Image<std::uint8_t>;

/// Real-valued gray raster; filter responses are kept in this form.
using GrayImageF = Image<double>;

/// Fused per-pixel maximum of the oriented filter responses.
using ResponseMap = GrayImageF;

/// Real-valued kernel / coefficient matrix (dimensions need not match an image).
using RealMatrix = Image<double>;

/// Per-pixel boolean raster: field-of-view masks, predicted vessels, ground
/// truth. Stored as one byte per pixel holding 0 or 1.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool fill = false)
      : pixels_(width, height, fill ? 1 : 0) {}

  int width() const { return pixels_.width(); }
  int height() const { return pixels_.height(); }
  bool empty() const { return pixels_.empty(); }
  std::size_t pixel_count() const { return pixels_.pixel_count(); }

  bool get(int x, int y) const { return pixels_(x, y) != 0; }
  void set(int x, int y, bool value) { pixels_(x, y) = value ? 1 : 0; }

  std::size_t count() const {
    std::size_t n = 0;
    for (std::uint8_t v : pixels_.data()) n += v;
    return n;
  }

  bool same_size(int w, int h) const { return pixels_.same_size(w, h); }

  const std::vector<std::uint8_t>& data() const { return pixels_.data(); }
  std::vector<std::uint8_t>& data() { return pixels_.data(); }

  friend bool operator==(const BinaryMask& a, const BinaryMask& b) = default;

 private:
  Image<std::uint8_t> pixels_;
};

/// Flat all-ones square structuring element with odd side length.
struct StructuringElement {
  int side = 5;

  explicit StructuringElement(int side_px = 5) : side(side_px) {
    if (side < 1 || side % 2 == 0) {
      throw std::invalid_argument(
          "StructuringElement: side must be odd and >= 1");
    }
  }
};

inline GrayImageF to_real(const GrayImage8& img) {
  GrayImageF out(img.width(), img.height());
  const auto& src = img.data();
  auto& dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i];
  return out;
}

}  // namespace vesselseg

#endif  // VESSELSEG_IMAGE_HPP
