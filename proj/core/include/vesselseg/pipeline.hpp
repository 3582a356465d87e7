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

#ifndef VESSELSEG_PIPELINE_HPP
#define VESSELSEG_PIPELINE_HPP

#include "vesselseg/config.hpp"
#include "vesselseg/entropic.hpp"
#include "vesselseg/evaluation.hpp"
#include "vesselseg/gabor.hpp"
#include "vesselseg/image.hpp"
#include "vesselseg/preprocess.hpp"

namespace vesselseg {

/// Everything one image produces on its way through the pipeline.
struct PipelineResult {
  GrayImage8 enhanced;    ///< preprocessed green channel
  BinaryMask fov;         ///< field of view (loaded or computed)
  ResponseMap response;   ///< fused maximum Gabor response
  GrayImage8 quantized;   ///< response quantized over the fov
  int threshold = 0;      ///< selected entropic level T_E
  BinaryMask mask;        ///< predicted vessels
  double seconds = 0.0;   ///< wall time of the run
};

/// preprocess -> oriented filter bank -> entropic binarization. When
/// `fov_override` is non-null it replaces the computed field-of-view mask.
PipelineResult run_pipeline(const FundusImage& img, const RunConfig& cfg,
                            const BinaryMask* fov_override = nullptr);

/// The evaluation mask for a result: the fov when cfg.fov_restricted, an
/// all-ones mask otherwise.
BinaryMask scoring_mask(const PipelineResult& result, const RunConfig& cfg);

}  // namespace vesselseg

#endif  // VESSELSEG_PIPELINE_HPP
