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

#include "vesselseg/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vesselseg/raster.hpp"

namespace vesselseg {

GaborParams derive_params(double thickness, double beta) {
  if (!(thickness >= 1.0)) {
    throw std::invalid_argument("derive_params: thickness must be >= 1");
  }
  if (!(beta >= 0.5 && beta <= 1.0)) {
    throw std::invalid_argument("derive_params: beta must lie in [0.5, 1]");
  }
  constexpr double pi = std::numbers::pi;
  GaborParams p;
  p.thickness = thickness;
  p.beta = beta;
  p.frequency = beta / thickness;
  p.lambda = std::sqrt(2.0 * std::numbers::ln2 / pi);
  p.sigma_x = p.lambda * thickness / (0.75 * pi);
  p.sigma_y = 0.85 * p.sigma_x;
  return p;
}

int default_half_extent(const GaborParams& params) {
  return std::max(1, static_cast<int>(std::ceil(3.0 * params.sigma_x)));
}

GaborKernel make_kernel(const GaborParams& params, double theta_deg,
                        int half_extent) {
  if (half_extent < 1) {
    throw std::invalid_argument("make_kernel: half extent must be >= 1");
  }
  // The kernel is an even function of (x_p, y_p) and cos is even, so theta
  // and theta + 180 sample identical kernels; normalize so they compare
  // bit-equal.
  double theta = std::fmod(theta_deg, 180.0);
  if (theta < 0.0) theta += 180.0;

  constexpr double pi = std::numbers::pi;
  const double rad = theta * pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double inv_sx2 = 1.0 / (params.sigma_x * params.sigma_x);
  const double inv_sy2 = 1.0 / (params.sigma_y * params.sigma_y);

  const int r = half_extent;
  GaborKernel k;
  k.theta_deg = theta;
  k.half_extent = r;
  k.samples = RealMatrix(2 * r + 1, 2 * r + 1);
  for (int y = -r; y <= r; ++y) {
    auto row = k.samples.row(y + r);
    for (int x = -r; x <= r; ++x) {
      const double xp = x * c + y * s;
      const double yp = -x * s + y * c;
      row[x + r] = std::exp(-pi * (xp * xp * inv_sx2 + yp * yp * inv_sy2)) *
                   std::cos(2.0 * pi * params.frequency * xp);
    }
  }
  return k;
}

OrientationSet OrientationSet::sweep(double step_deg) {
  if (!(step_deg > 0.0)) {
    throw std::invalid_argument("OrientationSet: step must be positive");
  }
  OrientationSet set;
  for (double a = 0.0; a < 180.0; a += step_deg) set.angles_deg.push_back(a);
  return set;
}

ResponseMap apply_bank(const GrayImageF& img, const GaborParams& params,
                       const OrientationSet& orients, int half_extent) {
  if (orients.angles_deg.empty()) {
    throw std::invalid_argument("apply_bank: empty orientation set");
  }
  if (img.empty()) throw std::invalid_argument("apply_bank: empty image");

  const GrayImageF padded = reflect_pad(img, half_extent, half_extent);
  ResponseMap fused;
  GrayImageF response;
  bool first = true;
  for (double angle : orients.angles_deg) {
    const GaborKernel k = make_kernel(params, angle, half_extent);
    convolve2d_padded(padded, k.samples, response);
    if (first) {
      fused = response;
      first = false;
    } else {
      auto& acc = fused.data();
      const auto& r = response.data();
      for (std::size_t i = 0; i < acc.size(); ++i) {
        acc[i] = std::max(acc[i], r[i]);
      }
    }
  }
  return fused;
}

ResponseMap apply_bank(const GrayImageF& img, const GaborParams& params,
                       const OrientationSet& orients) {
  return apply_bank(img, params, orients, default_half_extent(params));
}

}  // namespace vesselseg
