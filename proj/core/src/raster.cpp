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

#include "vesselseg/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace vesselseg {

int reflect_index(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

GrayImageF reflect_pad(const GrayImageF& img, int rx, int ry) {
  if (img.empty()) throw std::invalid_argument("reflect_pad: empty image");
  if (rx < 0 || ry < 0) throw std::invalid_argument("reflect_pad: negative radius");
  const int w = img.width();
  const int h = img.height();
  GrayImageF out(w + 2 * rx, h + 2 * ry);
  for (int y = -ry; y < h + ry; ++y) {
    const auto src = img.row(reflect_index(y, h));
    auto dst = out.row(y + ry);
    for (int x = -rx; x < w + rx; ++x) {
      dst[x + rx] = src[reflect_index(x, w)];
    }
  }
  return out;
}

void convolve2d_padded(const GrayImageF& padded, const RealMatrix& kernel,
                       GrayImageF& out) {
  const int kw = kernel.width();
  const int kh = kernel.height();
  if (kw % 2 == 0 || kh % 2 == 0) {
    throw std::invalid_argument("convolve2d: kernel sides must be odd");
  }
  const int w = padded.width() - (kw - 1);
  const int h = padded.height() - (kh - 1);
  if (w <= 0 || h <= 0) {
    throw std::invalid_argument("convolve2d: padded buffer smaller than kernel");
  }
  if (!out.same_size(w, h)) out = GrayImageF(w, h);
  std::fill(out.data().begin(), out.data().end(), 0.0);

  for (int y = 0; y < h; ++y) {
    double* dst = out.row(y).data();
    for (int kv = 0; kv < kh; ++kv) {
      const double* src = padded.row(y + kv).data();
      const double* krow = kernel.row(kv).data();
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        const double* s = src + x;
        for (int ku = 0; ku < kw; ++ku) acc += krow[ku] * s[ku];
        dst[x] += acc;
      }
    }
  }
}

GrayImageF convolve2d(const GrayImageF& img, const RealMatrix& kernel) {
  if (img.empty()) throw std::invalid_argument("convolve2d: empty image");
  if (kernel.empty() || kernel.width() % 2 == 0 || kernel.height() % 2 == 0) {
    throw std::invalid_argument("convolve2d: kernel sides must be odd");
  }
  const GrayImageF padded =
      reflect_pad(img, kernel.width() / 2, kernel.height() / 2);
  GrayImageF out;
  convolve2d_padded(padded, kernel, out);
  return out;
}

GrayImage8 median_filter(const GrayImage8& img, int side) {
  if (img.empty()) throw std::invalid_argument("median_filter: empty image");
  if (side < 1 || side % 2 == 0) {
    throw std::invalid_argument("median_filter: side must be odd and >= 1");
  }
  if (side == 1) return img;

  const int w = img.width();
  const int h = img.height();
  const int r = side / 2;

  // Padded copy so the sliding window never branches on borders.
  const int pw = w + 2 * r;
  const int ph = h + 2 * r;
  std::vector<std::uint8_t> pad(static_cast<std::size_t>(pw) * ph);
  for (int y = 0; y < ph; ++y) {
    const auto src = img.row(reflect_index(y - r, h));
    std::uint8_t* dst = pad.data() + static_cast<std::size_t>(y) * pw;
    for (int x = 0; x < pw; ++x) dst[x] = src[reflect_index(x - r, w)];
  }

  GrayImage8 out(w, h);
  const int rank = (side * side) / 2 + 1;  // 1-based rank of the median
  std::array<int, 256> hist{};
  for (int y = 0; y < h; ++y) {
    hist.fill(0);
    for (int wy = 0; wy < side; ++wy) {
      const std::uint8_t* row = pad.data() + static_cast<std::size_t>(y + wy) * pw;
      for (int wx = 0; wx < side; ++wx) ++hist[row[wx]];
    }
    auto* dst = out.row(y).data();
    for (int x = 0; x < w; ++x) {
      int seen = 0;
      int level = 0;
      for (;; ++level) {
        seen += hist[level];
        if (seen >= rank) break;
      }
      dst[x] = static_cast<std::uint8_t>(level);
      if (x + 1 < w) {
        for (int wy = 0; wy < side; ++wy) {
          const std::uint8_t* row =
              pad.data() + static_cast<std::size_t>(y + wy) * pw;
          --hist[row[x]];
          ++hist[row[x + side]];
        }
      }
    }
  }
  return out;
}

namespace {

// One erosion pass along x: out = 1 iff the full window fits in the row and
// contains no zero. Out-of-image pixels count as zero.
void erode_rows(const std::vector<std::uint8_t>& in, int w, int h, int r,
                std::vector<std::uint8_t>& out) {
  std::vector<std::int32_t> prefix(w + 1);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* src = in.data() + static_cast<std::size_t>(y) * w;
    std::uint8_t* dst = out.data() + static_cast<std::size_t>(y) * w;
    prefix[0] = 0;
    for (int x = 0; x < w; ++x) prefix[x + 1] = prefix[x] + (src[x] ? 1 : 0);
    const int side = 2 * r + 1;
    for (int x = 0; x < w; ++x) {
      const bool fits = x - r >= 0 && x + r < w;
      dst[x] = (fits && prefix[x + r + 1] - prefix[x - r] == side) ? 1 : 0;
    }
  }
}

}  // namespace

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se) {
  if (mask.empty()) throw std::invalid_argument("erode: empty mask");
  const int w = mask.width();
  const int h = mask.height();
  const int r = se.side / 2;
  if (r == 0) return mask;

  // A flat square separates into a horizontal and a vertical segment.
  std::vector<std::uint8_t> tmp(mask.data().size());
  erode_rows(mask.data(), w, h, r, tmp);

  // Vertical pass: run the same routine on the transposed raster.
  std::vector<std::uint8_t> tmp_t(tmp.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      tmp_t[static_cast<std::size_t>(x) * h + y] =
          tmp[static_cast<std::size_t>(y) * w + x];
  std::vector<std::uint8_t> out_t(tmp.size());
  erode_rows(tmp_t, h, w, r, out_t);

  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      out.data()[static_cast<std::size_t>(y) * w + x] =
          out_t[static_cast<std::size_t>(x) * h + y];
  return out;
}

namespace {

GrayImage8 quantize_range(const GrayImageF& img, int levels, double lo,
                          double hi) {
  GrayImage8 out(img.width(), img.height());
  const auto& src = img.data();
  auto& dst = out.data();
  if (hi <= lo) {
    // Degenerate range: constant input maps to all zeros.
    return out;
  }
  const double scale = (levels - 1) / (hi - lo);
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double q = std::floor((src[i] - lo) * scale + 0.5);
    dst[i] = static_cast<std::uint8_t>(
        std::clamp(q, 0.0, static_cast<double>(levels - 1)));
  }
  return out;
}

void check_quantize_args(const GrayImageF& img, int levels) {
  if (img.empty()) throw std::invalid_argument("quantize: empty image");
  if (levels < 2 || levels > 256) {
    throw std::invalid_argument("quantize: levels must lie in [2, 256]");
  }
  for (double v : img.data()) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("quantize: non-finite sample");
    }
  }
}

}  // namespace

GrayImage8 quantize(const GrayImageF& img, int levels) {
  check_quantize_args(img, levels);
  const auto [lo, hi] =
      std::minmax_element(img.data().begin(), img.data().end());
  return quantize_range(img, levels, *lo, *hi);
}

GrayImage8 quantize(const GrayImageF& img, int levels,
                    const BinaryMask& range_mask) {
  check_quantize_args(img, levels);
  if (!range_mask.same_size(img.width(), img.height())) {
    throw std::invalid_argument("quantize: mask dimensions differ from image");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  const auto& sel = range_mask.data();
  const auto& src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (sel[i]) {
      lo = std::min(lo, src[i]);
      hi = std::max(hi, src[i]);
    }
  }
  if (!std::isfinite(lo)) {
    throw std::invalid_argument("quantize: range mask selects no pixels");
  }
  return quantize_range(img, levels, lo, hi);
}

}  // namespace vesselseg
