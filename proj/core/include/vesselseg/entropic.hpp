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

#ifndef VESSELSEG_ENTROPIC_HPP
#define VESSELSEG_ENTROPIC_HPP

#include <cstdint>
#include <vector>

#include "vesselseg/image.hpp"

namespace vesselseg {

/// Gray-level co-occurrence matrix over horizontally-right and
/// vertically-lower neighbor transitions. counts[i * levels + j] is the
/// number of transitions from level i to level j; for an M x N source the
/// total is always M(N-1) + (M-1)N.
struct Glcm {
  int levels = 0;
  std::vector<std::int64_t> counts;

  std::int64_t at(int i, int j) const {
    return counts[static_cast<std::size_t>(i) * levels + j];
  }
  std::int64_t total() const;
};

/// Transition counts normalized to probabilities (sums to 1).
struct TransitionProbabilities {
  int levels = 0;
  std::vector<double> p;

  double at(int i, int j) const {
    return p[static_cast<std::size_t>(i) * levels + j];
  }
};

/// Probability mass of the within-object quadrant A (i <= T, j <= T) and
/// the within-background quadrant C (i > T, j > T). The cross-boundary
/// quadrants B and D carry the remaining mass and are never used.
struct QuadrantProbs {
  double object = 0.0;      // P_A
  double background = 0.0;  // P_C
};

/// Entropy curve of the threshold scan. selected is the smallest level
/// attaining the maximum of curve.
struct EntropyScan {
  std::vector<double> curve;  // H(T) for T = 0 .. levels-1
  int selected = 0;           // T_E
};

/// Builds the co-occurrence matrix of an image whose pixels all lie below
/// `levels`; a pixel at or above `levels` is rejected.
Glcm build_glcm(const GrayImage8& img, int levels);

/// Divides each count by the transition total. Rejects a matrix with no
/// transitions (a 1 x 1 source image).
TransitionProbabilities normalize_glcm(const Glcm& g);

QuadrantProbs quadrant_probs(const TransitionProbabilities& tp, int threshold);

/// Total second-order local entropy at one candidate threshold:
///
///   H(T) = H_A(T) + H_C(T),   H_Q = -1/2 sum p~ log2 p~
///
/// where p~ ranges over the quadrant's cells renormalized by its mass.
/// Empty quadrants and zero cells contribute zero.
double local_entropy(const TransitionProbabilities& tp, int threshold);

enum class TieBreak { Smallest, Largest };

/// Scans every candidate threshold and picks the entropy maximum. Runs in
/// O(levels^2) overall via 2-D prefix accumulation; values match
/// local_entropy to floating-point accuracy and the selected level matches
/// a per-threshold recomputation exactly. Ties break to the smallest level
/// by default.
EntropyScan select_threshold(const TransitionProbabilities& tp,
                             TieBreak tie = TieBreak::Smallest);

/// Quantizes a response map over the field of view, thresholds it at the
/// selected entropic level, and restricts the result to the field of view:
/// output = (quantized > T_E) AND fov. An all-zero fov yields an all-zero
/// mask.
BinaryMask binarize(const ResponseMap& response, int levels,
                    const BinaryMask& fov);

/// The pieces binarize is built from, for callers that also want the
/// quantized map and the scan itself.
struct ThresholdedResponse {
  GrayImage8 quantized;
  EntropyScan scan;
  BinaryMask mask;
};
ThresholdedResponse threshold_response(const ResponseMap& response, int levels,
                                       const BinaryMask& fov,
                                       TieBreak tie = TieBreak::Smallest);

}  // namespace vesselseg

#endif  // VESSELSEG_ENTROPIC_HPP
