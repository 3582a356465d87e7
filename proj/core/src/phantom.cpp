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

#include "vesselseg/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace vesselseg {

void PhantomSpec::validate() const {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("PhantomSpec: dimensions must be positive");
  }
  if (!(vessel_width >= 1.0)) {
    throw std::invalid_argument("PhantomSpec: vessel width must be >= 1");
  }
  if (contrast < 1 || contrast > 255) {
    throw std::invalid_argument("PhantomSpec: contrast outside [1, 255]");
  }
  if (noise_sd < 0.0) {
    throw std::invalid_argument("PhantomSpec: negative noise sd");
  }
  if (background < 0 || background > 255) {
    throw std::invalid_argument("PhantomSpec: background outside [0, 255]");
  }
}

namespace {

struct Segment {
  double x0, y0, x1, y1, half_width;
};

double segment_distance(const Segment& s, double px, double py) {
  const double dx = s.x1 - s.x0;
  const double dy = s.y1 - s.y0;
  const double len2 = dx * dx + dy * dy;
  double u = 0.0;
  if (len2 > 0.0) {
    u = std::clamp(((px - s.x0) * dx + (py - s.y0) * dy) / len2, 0.0, 1.0);
  }
  const double qx = s.x0 + u * dx;
  const double qy = s.y0 + u * dy;
  return std::hypot(px - qx, py - qy);
}

std::vector<Segment> centerline(const PhantomSpec& spec) {
  const double cx = (spec.width - 1) / 2.0;
  const double cy = (spec.height - 1) / 2.0;
  const double rad = spec.angle_deg * std::numbers::pi / 180.0;
  const double dx = std::cos(rad);
  const double dy = std::sin(rad);
  const double reach = std::hypot(spec.width, spec.height);
  const double hw = spec.vessel_width / 2.0;

  std::vector<Segment> segs;
  switch (spec.kind) {
    case VesselKind::Bar:
      segs.push_back({cx - reach * dx, cy - reach * dy, cx + reach * dx,
                      cy + reach * dy, hw});
      break;
    case VesselKind::Sinusoid: {
      // Sinusoidal sway around the bar axis, sampled as a polyline.
      const double amplitude = std::min(spec.width, spec.height) / 8.0;
      const double wavelength = std::min(spec.width, spec.height) / 2.0;
      const double nx = -dy;  // unit normal
      const double ny = dx;
      double px = 0.0, py = 0.0;
      bool have_prev = false;
      for (double t = -reach; t <= reach; t += 1.0) {
        const double off =
            amplitude * std::sin(2.0 * std::numbers::pi * t / wavelength);
        const double qx = cx + t * dx + off * nx;
        const double qy = cy + t * dy + off * ny;
        if (have_prev) segs.push_back({px, py, qx, qy, hw});
        px = qx;
        py = qy;
        have_prev = true;
      }
      break;
    }
    case VesselKind::Tree: {
      // Symmetric bifurcating tree rooted at the image center, first branch
      // along the configured axis. Width thins by 0.7 per generation.
      struct Node {
        double x, y, angle, length, half_width;
        int depth;
      };
      const double trunk = std::min(spec.width, spec.height) * 0.45;
      std::vector<Node> todo{{cx - trunk * dx, cy - trunk * dy,
                              spec.angle_deg, 2.0 * trunk * 0.55, hw, 0}};
      while (!todo.empty()) {
        const Node n = todo.back();
        todo.pop_back();
        const double a = n.angle * std::numbers::pi / 180.0;
        const double ex = n.x + n.length * std::cos(a);
        const double ey = n.y + n.length * std::sin(a);
        segs.push_back({n.x, n.y, ex, ey, n.half_width});
        if (n.depth < 3) {
          const double cw = std::max(0.5, n.half_width * 0.7);
          todo.push_back({ex, ey, n.angle - 25.0, n.length * 0.62, cw, n.depth + 1});
          todo.push_back({ex, ey, n.angle + 25.0, n.length * 0.62, cw, n.depth + 1});
        }
      }
      break;
    }
  }
  return segs;
}

}  // namespace

GrayImageF phantom_noise(int width, int height, double sd, std::uint32_t seed) {
  GrayImageF noise(width, height, 0.0);
  if (sd <= 0.0) return noise;
  std::mt19937 rng(seed);
  // Hand-rolled Box-Muller so the stream does not depend on the standard
  // library's normal_distribution implementation.
  const double two_pi = 2.0 * std::numbers::pi;
  auto& data = noise.data();
  for (std::size_t i = 0; i < data.size(); i += 2) {
    const double u1 =
        (static_cast<double>(rng()) + 1.0) / (static_cast<double>(rng.max()) + 2.0);
    const double u2 =
        static_cast<double>(rng()) / (static_cast<double>(rng.max()) + 1.0);
    const double mag = sd * std::sqrt(-2.0 * std::log(u1));
    data[i] = mag * std::cos(two_pi * u2);
    if (i + 1 < data.size()) data[i + 1] = mag * std::sin(two_pi * u2);
  }
  return noise;
}

Phantom make_phantom(const PhantomSpec& spec, std::uint32_t seed) {
  spec.validate();
  const std::vector<Segment> segs = centerline(spec);
  const int fg = std::min(255, spec.background + spec.contrast);

  Phantom out;
  out.image = GrayImage8(spec.width, spec.height,
                         static_cast<std::uint8_t>(spec.background));
  out.truth = BinaryMask(spec.width, spec.height);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      for (const Segment& s : segs) {
        if (segment_distance(s, x, y) <= s.half_width) {
          out.image(x, y) = static_cast<std::uint8_t>(fg);
          out.truth.set(x, y, true);
          break;
        }
      }
    }
  }

  if (spec.noise_sd > 0.0) {
    const GrayImageF noise =
        phantom_noise(spec.width, spec.height, spec.noise_sd, seed);
    auto& img = out.image.data();
    const auto& n = noise.data();
    for (std::size_t i = 0; i < img.size(); ++i) {
      const double v = std::floor(img[i] + n[i] + 0.5);
      img[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
  }
  return out;
}

}  // namespace vesselseg
