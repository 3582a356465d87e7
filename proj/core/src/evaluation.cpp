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

#include "vesselseg/evaluation.hpp"

#include <cmath>

#include "vesselseg/raster.hpp"

namespace vesselseg {

ContingencyCounts contingency(const BinaryMask& pred, const BinaryMask& truth,
                              const BinaryMask& fov) {
  if (!pred.same_size(truth.width(), truth.height()) ||
      !pred.same_size(fov.width(), fov.height())) {
    throw std::invalid_argument("contingency: mask dimensions differ");
  }
  ContingencyCounts c;
  const auto& p = pred.data();
  const auto& t = truth.data();
  const auto& f = fov.data();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!f[i]) continue;
    if (p[i]) {
      t[i] ? ++c.tp : ++c.fp;
    } else {
      t[i] ? ++c.fn : ++c.tn;
    }
  }
  return c;
}

SensSpec sens_spec(const ContingencyCounts& c) {
  if (c.tp + c.fn <= 0) throw EmptyPositiveClass();
  if (c.tn + c.fp <= 0) throw EmptyNegativeClass();
  SensSpec s;
  s.sensitivity = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  s.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
  return s;
}

RocCurve roc_curve(const ResponseMap& response, const BinaryMask& truth,
                   const BinaryMask& fov, int step, int levels) {
  if (step < 1) throw std::invalid_argument("roc_curve: step must be >= 1");
  const GrayImage8 q = quantize(response, levels, fov);

  RocCurve curve;
  const auto& qd = q.data();
  const auto& fd = fov.data();
  BinaryMask pred(response.width(), response.height());
  auto& pd = pred.data();
  for (int t = 0;; t += step) {
    if (t > levels - 1) {
      if (curve.points.empty() || curve.points.back().threshold != levels - 1) {
        t = levels - 1;  // always include the strictest endpoint
      } else {
        break;
      }
    }
    for (std::size_t i = 0; i < qd.size(); ++i) {
      pd[i] = (fd[i] && qd[i] > t) ? 1 : 0;
    }
    const SensSpec s = sens_spec(contingency(pred, truth, fov));
    curve.points.push_back({t, 1.0 - s.specificity, s.sensitivity});
    if (t == levels - 1) break;
  }
  return curve;
}

AggregateStats aggregate(const std::vector<SensSpec>& per_image) {
  if (per_image.empty()) {
    throw std::invalid_argument("aggregate: empty metric list");
  }
  const double n = static_cast<double>(per_image.size());
  // Shifted two-pass: anchoring on the first value keeps constant lists at
  // exactly zero deviation.
  const double anchor_sens = per_image.front().sensitivity;
  const double anchor_spec = per_image.front().specificity;
  double dsum_sens = 0.0, dsum_spec = 0.0;
  for (const SensSpec& s : per_image) {
    dsum_sens += s.sensitivity - anchor_sens;
    dsum_spec += s.specificity - anchor_spec;
  }
  const double dmean_sens = dsum_sens / n;
  const double dmean_spec = dsum_spec / n;

  AggregateStats a;
  a.mean_sensitivity = anchor_sens + dmean_sens;
  a.mean_specificity = anchor_spec + dmean_spec;
  double var_sens = 0.0, var_spec = 0.0;
  for (const SensSpec& s : per_image) {
    const double ds = (s.sensitivity - anchor_sens) - dmean_sens;
    const double dp = (s.specificity - anchor_spec) - dmean_spec;
    var_sens += ds * ds;
    var_spec += dp * dp;
  }
  a.sd_sensitivity = std::sqrt(var_sens / n);
  a.sd_specificity = std::sqrt(var_spec / n);
  return a;
}

}  // namespace vesselseg
