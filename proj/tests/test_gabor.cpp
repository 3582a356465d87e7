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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vesselseg/raster.hpp"

using namespace vesselseg;

TEST_CASE("derive_params follows the parameter formulas") {
  const GaborParams p = derive_params(6.0, 0.5);
  CHECK(p.frequency == 0.5 / 6.0);  // = 1/12
  CHECK(p.frequency == doctest::Approx(0.083333333333333329).epsilon(1e-15));

  // Values recomputed from the formulas, independent of the library.
  const double lambda = std::sqrt(2.0 * std::log(2.0) / std::numbers::pi);
  CHECK(p.lambda == doctest::Approx(lambda).epsilon(1e-15));
  CHECK(p.lambda == doctest::Approx(0.66428247026796006).epsilon(1e-12));
  CHECK(p.sigma_x ==
        doctest::Approx(lambda * 6.0 / (0.75 * std::numbers::pi)).epsilon(1e-15));
  CHECK(p.sigma_x == doctest::Approx(1.6915814200390533).epsilon(1e-12));
  CHECK(p.sigma_y == doctest::Approx(0.85 * p.sigma_x).epsilon(1e-15));
  CHECK(p.sigma_y == doctest::Approx(1.4378442070331954).epsilon(1e-12));
  CHECK(p.frequency > 0.0);
  CHECK(p.sigma_x > 0.0);
  CHECK(p.sigma_y > 0.0);

  const GaborParams q = derive_params(3.0, 1.0);
  CHECK(q.frequency == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(q.lambda == p.lambda);  // lambda is a constant

  CHECK_THROWS_AS(derive_params(6.0, 0.49), std::invalid_argument);
  CHECK_THROWS_AS(derive_params(6.0, 1.01), std::invalid_argument);
  CHECK_THROWS_AS(derive_params(0.5, 0.5), std::invalid_argument);
}

TEST_CASE("default_half_extent truncates at three sigma") {
  const GaborParams p = derive_params(6.0, 0.5);
  CHECK(default_half_extent(p) == 6);  // ceil(3 * 1.69158) = 6
}

TEST_CASE("make_kernel analytic points") {
  const GaborParams p = derive_params(6.0, 0.5);
  const int r = default_half_extent(p);

  SUBCASE("center sample is exactly one") {
    for (double theta : {0.0, 15.0, 45.0, 90.0, 137.5}) {
      const GaborKernel k = make_kernel(p, theta, r);
      CHECK(k.samples(r, r) == 1.0);
    }
  }
  SUBCASE("kernels are pi-periodic, bit for bit") {
    for (double theta : {0.0, 15.0, 75.0, 120.0}) {
      const GaborKernel a = make_kernel(p, theta, r);
      const GaborKernel b = make_kernel(p, theta + 180.0, r);
      CHECK(a.samples == b.samples);
    }
  }
  SUBCASE("kernels are even: samples(x, y) == samples(-x, -y)") {
    for (double theta : {0.0, 30.0, 105.0}) {
      const GaborKernel k = make_kernel(p, theta, r);
      for (int y = -r; y <= r; ++y)
        for (int x = -r; x <= r; ++x)
          CHECK(k.samples(x + r, y + r) ==
                doctest::Approx(k.samples(r - x, r - y)).epsilon(1e-15));
    }
  }
  SUBCASE("cosine zero crossing at x = 1/(4f) for theta 0") {
    // 1/(4f) = t/(4 beta) = 3 exactly, which is a grid sample.
    const GaborKernel k = make_kernel(p, 0.0, r);
    CHECK(std::abs(k.samples(r + 3, r)) <= 1e-9);
  }
  SUBCASE("finite everywhere") {
    const GaborKernel k = make_kernel(p, 60.0, r);
    for (double v : k.samples.data()) CHECK(std::isfinite(v));
  }
  SUBCASE("half extent below one rejected") {
    CHECK_THROWS_AS(make_kernel(p, 0.0, 0), std::invalid_argument);
  }
}

TEST_CASE("orientation sweep covers [0, 180)") {
  const OrientationSet bank = OrientationSet::sweep();
  REQUIRE(bank.angles_deg.size() == 12);
  for (int i = 0; i < 12; ++i) CHECK(bank.angles_deg[i] == 15.0 * i);
  CHECK_THROWS_AS(OrientationSet::sweep(0.0), std::invalid_argument);
}

TEST_CASE("apply_bank on a constant image is constant") {
  const GaborParams p = derive_params(6.0, 0.5);
  const int r = default_half_extent(p);
  const double c = 3.5;
  const GrayImageF img(20, 14, c);
  const ResponseMap fused = apply_bank(img, p, OrientationSet::sweep(), r);

  double best = -1e300;
  for (double theta : OrientationSet::sweep().angles_deg) {
    const GaborKernel k = make_kernel(p, theta, r);
    double sum = 0.0;
    for (double v : k.samples.data()) sum += v;
    best = std::max(best, c * sum);
  }
  for (double v : fused.data()) CHECK(v == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("fused response dominates every single orientation") {
  std::mt19937 rng(21);
  const GaborParams p = derive_params(6.0, 0.5);
  const int r = default_half_extent(p);
  const GrayImageF img = oracles::random_real(rng, 24, 24, 0.0, 255.0);
  const ResponseMap fused = apply_bank(img, p, OrientationSet::sweep(), r);
  for (double theta : OrientationSet::sweep().angles_deg) {
    OrientationSet one;
    one.angles_deg = {theta};
    const ResponseMap single = apply_bank(img, p, one, r);
    for (std::size_t i = 0; i < fused.data().size(); ++i) {
      CHECK(fused.data()[i] >= single.data()[i] - 1e-12);
    }
  }
}

TEST_CASE("adding an orientation never decreases the fused response") {
  std::mt19937 rng(22);
  const GaborParams p = derive_params(6.0, 0.5);
  const int r = default_half_extent(p);
  const GrayImageF img = oracles::random_real(rng, 20, 20, 0.0, 255.0);
  OrientationSet partial;
  partial.angles_deg = {0.0, 45.0, 90.0};
  OrientationSet extended = partial;
  extended.angles_deg.push_back(135.0);
  const ResponseMap a = apply_bank(img, p, partial, r);
  const ResponseMap b = apply_bank(img, p, extended, r);
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    CHECK(b.data()[i] >= a.data()[i] - 1e-12);
  }
}

TEST_CASE("bank impulse response with one orientation is the rotated kernel") {
  const GaborParams p = derive_params(6.0, 0.5);
  const int r = default_half_extent(p);
  const int n = 4 * r + 1;
  GrayImageF img(n, n, 0.0);
  img(n / 2, n / 2) = 1.0;

  OrientationSet one;
  one.angles_deg = {45.0};
  const ResponseMap out = apply_bank(img, p, one, r);
  const GaborKernel k = make_kernel(p, 45.0, r);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double rotated = k.samples(r - dx, r - dy);
      CHECK(out(n / 2 + dx, n / 2 + dy) ==
            doctest::Approx(rotated).epsilon(1e-9));
    }
  }
}

TEST_CASE("bright bar responds far above the background") {
  // Width-6 vertical bar on dark ground; the fused response at the bar
  // center must strictly dominate everything 10+ px away.
  const int n = 64;
  GrayImageF img(n, n, 10.0);
  for (int y = 0; y < n; ++y)
    for (int x = 29; x < 35; ++x) img(x, y) = 200.0;

  const GaborParams p = derive_params(6.0, 0.5);
  const ResponseMap fused = apply_bank(img, p, OrientationSet::sweep());

  double center_min = 1e300;
  double far_max = -1e300;
  for (int y = 8; y < n - 8; ++y) {
    center_min = std::min({center_min, fused(31, y), fused(32, y)});
    for (int x = 0; x < n; ++x) {
      if (x <= 19 || x >= 45) far_max = std::max(far_max, fused(x, y));
    }
  }
  CHECK(center_min > far_max);
  CHECK_THROWS_AS(apply_bank(img, p, OrientationSet{}), std::invalid_argument);
}
