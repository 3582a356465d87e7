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

#ifndef VESSELSEG_GABOR_HPP
#define VESSELSEG_GABOR_HPP

#include <vector>

#include "vesselseg/image.hpp"

namespace vesselseg {

/// Scalar parameters of the oriented Gabor kernels, all derived from the
/// vessel thickness t and the pass-band factor beta:
///
///   f       = beta / t
///   lambda  = sqrt(2 ln 2 / pi)
///   sigma_x = lambda * t / (0.75 * pi)
///   sigma_y = 0.85 * sigma_x
struct GaborParams {
  double thickness = 6.0;  ///< t, expected vessel width in pixels
  double beta = 0.5;       ///< pass-band factor, in [0.5, 1]
  double frequency = 0.0;  ///< f, central frequency in cycles/pixel
  double lambda = 0.0;
  double sigma_x = 0.0;  ///< Gaussian spread along the modulation axis
  double sigma_y = 0.0;  ///< Gaussian spread across it
};

/// Derives the dependent fields from (t, beta). Rejects t < 1 and beta
/// outside [0.5, 1].
GaborParams derive_params(double thickness, double beta);

/// Sampled kernel for one orientation. theta is measured in degrees from the
/// positive x axis with y pointing down, and is normalized into [0, 180)
/// when the kernel is built (the kernel is periodic in 180 degrees).
struct GaborKernel {
  double theta_deg = 0.0;
  int half_extent = 0;   ///< R; samples form a (2R+1) x (2R+1) matrix
  RealMatrix samples;
};

/// Samples g(x, y) = exp(-pi (x_p^2/sx^2 + y_p^2/sy^2)) cos(2 pi f x_p) on
/// the integer grid [-R, R]^2, with x_p = x cos t + y sin t and
/// y_p = -x sin t + y cos t. The center sample is exactly 1.
GaborKernel make_kernel(const GaborParams& params, double theta_deg,
                        int half_extent);

/// Default truncation radius: ceil(3 sigma_x), never below 1.
int default_half_extent(const GaborParams& params);

/// Ordered list of bank orientations in degrees.
struct OrientationSet {
  std::vector<double> angles_deg;

  /// {0, step, 2*step, ...} covering [0, 180). The default step of 15
  /// degrees gives the twelve-filter bank.
  static OrientationSet sweep(double step_deg = 15.0);
};

/// Runs one convolution per orientation over `img` and keeps the per-pixel
/// running maximum. The border is padded once by reflection and shared by
/// every orientation. Rejects an empty orientation set.
ResponseMap apply_bank(const GrayImageF& img, const GaborParams& params,
                       const OrientationSet& orients, int half_extent);

/// apply_bank with the default truncation radius.
ResponseMap apply_bank(const GrayImageF& img, const GaborParams& params,
                       const OrientationSet& orients);

}  // namespace vesselseg

#endif  // VESSELSEG_GABOR_HPP
