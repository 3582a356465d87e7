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

#ifndef VESSELSEG_EVALUATION_HPP
#define VESSELSEG_EVALUATION_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vesselseg/image.hpp"

namespace vesselseg {

/// Per-pixel contingency counts over the evaluated (in-FOV) pixels.
struct ContingencyCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
};

struct SensSpec {
  double sensitivity = 0.0;
  double specificity = 0.0;
};

struct EmptyPositiveClass : std::domain_error {
  EmptyPositiveClass()
      : std::domain_error("sens_spec: no positive pixels (tp + fn == 0)") {}
};
struct EmptyNegativeClass : std::domain_error {
  EmptyNegativeClass()
      : std::domain_error("sens_spec: no negative pixels (tn + fp == 0)") {}
};

/// Counts agreement between prediction and truth over fov = 1 pixels only.
/// All three masks must share dimensions.
ContingencyCounts contingency(const BinaryMask& pred, const BinaryMask& truth,
                              const BinaryMask& fov);

/// sensitivity = tp / (tp + fn); specificity = tn / (tn + fp). Throws
/// EmptyPositiveClass / EmptyNegativeClass when a denominator is zero.
SensSpec sens_spec(const ContingencyCounts& c);

struct RocPoint {
  int threshold = 0;
  double fpr = 0.0;  ///< 1 - specificity
  double tpr = 0.0;  ///< sensitivity
};

/// ROC points in increasing-threshold order; tpr and fpr are nonincreasing
/// along the list.
struct RocCurve {
  std::vector<RocPoint> points;
};

/// Sweeps the binarization threshold over the quantized response
/// (thresholds 0, step, 2*step, ... plus levels-1 if the progression does
/// not land on it) and records one (fpr, tpr) point per threshold.
/// Classification at threshold T is q > T within the field of view, exactly
/// as the entropic binarization does, so the entropic operating point lies
/// on the step-1 curve.
RocCurve roc_curve(const ResponseMap& response, const BinaryMask& truth,
                   const BinaryMask& fov, int step, int levels);

/// Arithmetic mean and population standard deviation per metric.
struct AggregateStats {
  double mean_sensitivity = 0.0;
  double sd_sensitivity = 0.0;
  double mean_specificity = 0.0;
  double sd_specificity = 0.0;
};

AggregateStats aggregate(const std::vector<SensSpec>& per_image);

}  // namespace vesselseg

#endif  // VESSELSEG_EVALUATION_HPP
