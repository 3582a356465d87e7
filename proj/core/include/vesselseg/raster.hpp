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

#ifndef VESSELSEG_RASTER_HPP
#define VESSELSEG_RASTER_HPP

#include "vesselseg/image.hpp"

namespace vesselseg {

/// Reflects an out-of-range index into [0, n): -1 -> 0, -2 -> 1, n -> n-1.
/// The fold repeats, so windows larger than the image stay well defined.
int reflect_index(int i, int n);

/// Copy of `img` with a reflected border of `rx` columns and `ry` rows.
GrayImageF reflect_pad(const GrayImageF& img, int rx, int ry);

/// Sliding full-kernel sum under reflected borders:
///
///   out(x, y) = sum_{u,v} kernel(u, v) * in(x + u - Rx, y + v - Ry)
///
/// so the response to a centered impulse is the 180-degree-rotated kernel.
/// For the even-symmetric kernels used in this pipeline this equals the
/// convolution g * I. Output dimensions equal input dimensions.
/// Throws std::invalid_argument for even kernel sides or an empty image.
GrayImageF convolve2d(const GrayImageF& img, const RealMatrix& kernel);

/// convolve2d against an already padded buffer (from reflect_pad with radii
/// matching the kernel). Lets a filter bank pad once and reuse the border.
void convolve2d_padded(const GrayImageF& padded, const RealMatrix& kernel,
                       GrayImageF& out);

/// Median of the side x side reflected-border neighborhood at each pixel.
GrayImage8 median_filter(const GrayImage8& img, int side);

/// Morphological erosion by a flat square element. Pixels outside the image
/// count as 0, so a (side/2)-wide frame always erodes away.
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se);

/// Affine map of [min, max] onto [0, levels-1] with round-half-up.
/// A constant image maps to all zeros. levels must lie in [2, 256];
/// non-finite samples are rejected.
GrayImage8 quantize(const GrayImageF& img, int levels);

/// quantize with the [min, max] range taken over `range_mask` pixels only;
/// values outside that range clamp to the ends. The mask must select at
/// least one pixel.
GrayImage8 quantize(const GrayImageF& img, int levels,
                    const BinaryMask& range_mask);

}  // namespace vesselseg

#endif  // VESSELSEG_RASTER_HPP
