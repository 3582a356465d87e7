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

#ifndef VESSELSEG_PHANTOM_HPP
#define VESSELSEG_PHANTOM_HPP

#include <cstdint>

#include "vesselseg/image.hpp"

namespace vesselseg {

enum class VesselKind { Bar, Sinusoid, Tree };

/// Synthetic vessel image for dataset-free testing. The truth mask marks
/// exactly the pixels the generator painted as vessel, before noise.
struct PhantomSpec {
  int width = 256;
  int height = 256;
  VesselKind kind = VesselKind::Bar;
  double vessel_width = 6.0;  ///< px, >= 1
  int contrast = 60;          ///< vessel brightness above background, [1, 255]
  double noise_sd = 0.0;      ///< additive Gaussian noise
  double angle_deg = 90.0;    ///< vessel axis from the +x axis, y down
  int background = 80;        ///< background gray level

  void validate() const;
};

struct Phantom {
  GrayImage8 image;
  BinaryMask truth;
};

/// Deterministic for a fixed (spec, seed); the noise stream is a Box-Muller
/// transform of mt19937 draws, so files reproduce across platforms.
Phantom make_phantom(const PhantomSpec& spec, std::uint32_t seed);

/// The phantom's noise stream by itself, in pixel scan order (used to test
/// reproducibility against the generator).
GrayImageF phantom_noise(int width, int height, double sd, std::uint32_t seed);

}  // namespace vesselseg

#endif  // VESSELSEG_PHANTOM_HPP
