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

#include "vesselseg/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "vesselseg/raster.hpp"

namespace vesselseg {

PipelineResult run_pipeline(const FundusImage& img, const RunConfig& cfg,
                            const BinaryMask* fov_override) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  PipelineResult out;
  Preprocessed pre = preprocess(img, cfg.pre);
  out.enhanced = std::move(pre.enhanced);
  out.fov = fov_override ? *fov_override : std::move(pre.fov);
  if (!out.fov.same_size(img.width(), img.height())) {
    throw std::invalid_argument("run_pipeline: fov dimensions differ from image");
  }

  GrayImageF real = to_real(out.enhanced);
  if (cfg.invert) {
    for (double& v : real.data()) v = 255.0 - v;
  }

  const GaborParams params = derive_params(cfg.thickness, cfg.beta);
  const int half_extent = std::max(
      1, static_cast<int>(std::ceil(cfg.kernel_sigma_mult * params.sigma_x)));
  out.response = apply_bank(real, params,
                            OrientationSet::sweep(cfg.orientation_step),
                            half_extent);

  ThresholdedResponse thresholded =
      threshold_response(out.response, cfg.levels, out.fov, cfg.tie_break);
  out.quantized = std::move(thresholded.quantized);
  out.threshold = thresholded.scan.selected;
  out.mask = std::move(thresholded.mask);

  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

BinaryMask scoring_mask(const PipelineResult& result, const RunConfig& cfg) {
  if (cfg.fov_restricted) return result.fov;
  return BinaryMask(result.fov.width(), result.fov.height(), true);
}

}  // namespace vesselseg
