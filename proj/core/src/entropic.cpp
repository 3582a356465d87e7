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

#include "vesselseg/entropic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vesselseg/raster.hpp"

namespace vesselseg {

namespace {

// Quadrant masses below this are roundoff residue of the prefix-sum
// subtraction, not real probability mass (the smallest representable cell
// is 1/total_transitions, orders of magnitude above it).
constexpr double kEmptyQuadrant = 1e-14;

// Entropies this small only arise from singleton quadrants whose exact
// value is zero; snap them so tie-breaking is stable.
constexpr double kEntropySnap = 1e-12;

double clean_entropy(double h) {
  if (!(h > kEntropySnap)) return 0.0;
  return h;
}

}  // namespace

std::int64_t Glcm::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

Glcm build_glcm(const GrayImage8& img, int levels) {
  if (img.empty()) throw std::invalid_argument("build_glcm: empty image");
  if (levels < 2 || levels > 256) {
    throw std::invalid_argument("build_glcm: levels must lie in [2, 256]");
  }
  Glcm g;
  g.levels = levels;
  g.counts.assign(static_cast<std::size_t>(levels) * levels, 0);

  const int w = img.width();
  const int h = img.height();
  for (int y = 0; y < h; ++y) {
    const auto row = img.row(y);
    for (int x = 0; x < w; ++x) {
      const int v = row[x];
      if (v >= levels) {
        throw std::invalid_argument("build_glcm: pixel value >= levels");
      }
      if (x + 1 < w) {
        ++g.counts[static_cast<std::size_t>(v) * levels + row[x + 1]];
      }
      if (y + 1 < h) {
        ++g.counts[static_cast<std::size_t>(v) * levels + img(x, y + 1)];
      }
    }
  }
  return g;
}

TransitionProbabilities normalize_glcm(const Glcm& g) {
  const std::int64_t total = g.total();
  if (total <= 0) {
    throw std::invalid_argument(
        "normalize_glcm: no transitions (image smaller than 1x2)");
  }
  TransitionProbabilities tp;
  tp.levels = g.levels;
  tp.p.resize(g.counts.size());
  const double inv = 1.0 / static_cast<double>(total);
  for (std::size_t i = 0; i < g.counts.size(); ++i) {
    tp.p[i] = static_cast<double>(g.counts[i]) * inv;
  }
  return tp;
}

QuadrantProbs quadrant_probs(const TransitionProbabilities& tp,
                             int threshold) {
  const int L = tp.levels;
  if (threshold < 0 || threshold >= L) {
    throw std::invalid_argument("quadrant_probs: threshold out of range");
  }
  QuadrantProbs q;
  for (int i = 0; i <= threshold; ++i) {
    for (int j = 0; j <= threshold; ++j) q.object += tp.at(i, j);
  }
  for (int i = threshold + 1; i < L; ++i) {
    for (int j = threshold + 1; j < L; ++j) q.background += tp.at(i, j);
  }
  return q;
}

double local_entropy(const TransitionProbabilities& tp, int threshold) {
  const int L = tp.levels;
  if (threshold < 0 || threshold >= L) {
    throw std::invalid_argument("local_entropy: threshold out of range");
  }
  const QuadrantProbs q = quadrant_probs(tp, threshold);

  double ha = 0.0;
  if (q.object > 0.0) {
    for (int i = 0; i <= threshold; ++i) {
      for (int j = 0; j <= threshold; ++j) {
        const double p = tp.at(i, j);
        if (p > 0.0) {
          const double pn = p / q.object;
          ha -= pn * std::log2(pn);
        }
      }
    }
  }
  double hc = 0.0;
  if (q.background > 0.0) {
    for (int i = threshold + 1; i < L; ++i) {
      for (int j = threshold + 1; j < L; ++j) {
        const double p = tp.at(i, j);
        if (p > 0.0) {
          const double pn = p / q.background;
          hc -= pn * std::log2(pn);
        }
      }
    }
  }
  return clean_entropy(0.5 * ha) + clean_entropy(0.5 * hc);
}

EntropyScan select_threshold(const TransitionProbabilities& tp, TieBreak tie) {
  const int L = tp.levels;
  if (L < 2 || tp.p.size() != static_cast<std::size_t>(L) * L) {
    throw std::invalid_argument("select_threshold: malformed probabilities");
  }

  // Inclusive 2-D prefix sums (offset by one) of the mass p and of the
  // unnormalized entropy term w = p log2 p. Quadrant A at threshold T reads
  // the corner prefix; quadrant C combines four corners of the complement.
  const int n = L + 1;
  std::vector<double> pre_p(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> pre_w(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < L; ++i) {
    double row_p = 0.0;
    double row_w = 0.0;
    for (int j = 0; j < L; ++j) {
      const double p = tp.at(i, j);
      row_p += p;
      row_w += p > 0.0 ? p * std::log2(p) : 0.0;
      const std::size_t up = static_cast<std::size_t>(i) * n + (j + 1);
      const std::size_t cur = static_cast<std::size_t>(i + 1) * n + (j + 1);
      pre_p[cur] = pre_p[up] + row_p;
      pre_w[cur] = pre_w[up] + row_w;
    }
  }
  const auto corner = [&](const std::vector<double>& pre, int t) {
    // Mass of the (i > t, j > t) quadrant.
    const std::size_t full = static_cast<std::size_t>(L) * n + L;
    const std::size_t top = static_cast<std::size_t>(t + 1) * n + L;
    const std::size_t left = static_cast<std::size_t>(L) * n + (t + 1);
    const std::size_t both = static_cast<std::size_t>(t + 1) * n + (t + 1);
    return pre[full] - pre[top] - pre[left] + pre[both];
  };

  EntropyScan scan;
  scan.curve.resize(L);
  for (int t = 0; t < L; ++t) {
    const double pa = pre_p[static_cast<std::size_t>(t + 1) * n + (t + 1)];
    const double wa = pre_w[static_cast<std::size_t>(t + 1) * n + (t + 1)];
    const double pc = corner(pre_p, t);
    const double wc = corner(pre_w, t);

    double ha = 0.0;
    if (pa > kEmptyQuadrant) ha = -0.5 * (wa / pa - std::log2(pa));
    double hc = 0.0;
    if (pc > kEmptyQuadrant) hc = -0.5 * (wc / pc - std::log2(pc));
    scan.curve[t] = clean_entropy(ha) + clean_entropy(hc);
  }

  int best = 0;
  for (int t = 1; t < L; ++t) {
    const bool better = tie == TieBreak::Smallest
                            ? scan.curve[t] > scan.curve[best]
                            : scan.curve[t] >= scan.curve[best];
    if (better) best = t;
  }
  scan.selected = best;
  return scan;
}

ThresholdedResponse threshold_response(const ResponseMap& response, int levels,
                                       const BinaryMask& fov, TieBreak tie) {
  if (!fov.same_size(response.width(), response.height())) {
    throw std::invalid_argument(
        "threshold_response: fov dimensions differ from response");
  }
  ThresholdedResponse out;
  if (fov.count() == 0) {
    out.quantized = GrayImage8(response.width(), response.height());
    out.scan.curve.assign(static_cast<std::size_t>(levels), 0.0);
    out.scan.selected = 0;
    out.mask = BinaryMask(response.width(), response.height());
    return out;
  }
  out.quantized = quantize(response, levels, fov);
  out.scan = select_threshold(normalize_glcm(build_glcm(out.quantized, levels)),
                              tie);
  out.mask = BinaryMask(response.width(), response.height());
  const auto& q = out.quantized.data();
  const auto& f = fov.data();
  auto& m = out.mask.data();
  for (std::size_t i = 0; i < q.size(); ++i) {
    m[i] = (f[i] && q[i] > out.scan.selected) ? 1 : 0;
  }
  return out;
}

BinaryMask binarize(const ResponseMap& response, int levels,
                    const BinaryMask& fov) {
  return threshold_response(response, levels, fov).mask;
}

}  // namespace vesselseg
