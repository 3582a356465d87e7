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

#include "vesselseg/preprocess.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vesselseg/raster.hpp"

using namespace vesselseg;

namespace {

FundusImage solid(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return FundusImage{GrayImage8(w, h, r), GrayImage8(w, h, g), GrayImage8(w, h, b)};
}

// In-test replica of the documented tile mapping: clip, uniform
// redistribution, cdf, round(255 cdf / area).
std::array<int, 256> oracle_tile_map(std::array<long long, 256> hist,
                                     long long area, double clip) {
  const long long clip_at =
      std::max<long long>(1, static_cast<long long>(clip * area / 256.0));
  long long excess = 0;
  for (auto& b : hist) {
    if (b > clip_at) {
      excess += b - clip_at;
      b = clip_at;
    }
  }
  for (int i = 0; i < 256; ++i) hist[i] += excess / 256 + (i < excess % 256 ? 1 : 0);
  std::array<int, 256> map{};
  long long cdf = 0;
  for (int i = 0; i < 256; ++i) {
    cdf += hist[i];
    map[i] = static_cast<int>(
        std::clamp(std::floor(255.0 * cdf / area + 0.5), 0.0, 255.0));
  }
  return map;
}

}  // namespace

TEST_CASE("extract_green is the green plane verbatim") {
  CHECK(extract_green(solid(2, 2, 0, 255, 0))(0, 0) == 255);
  CHECK(extract_green(solid(2, 2, 255, 0, 128))(0, 0) == 0);
  CHECK(extract_green(solid(2, 2, 10, 20, 30))(1, 1) == 20);

  // Projection: lifting a gray image into color and extracting again is the
  // identity.
  std::mt19937 rng(31);
  const GrayImage8 gray = oracles::random_gray(rng, 9, 5, 256);
  const FundusImage lifted{gray, gray, gray};
  CHECK(extract_green(lifted) == gray);

  FundusImage bad{GrayImage8(2, 2), GrayImage8(3, 2), GrayImage8(2, 2)};
  CHECK_THROWS_AS(extract_green(bad), std::invalid_argument);
}

TEST_CASE("clahe maps a constant image to a constant image") {
  const GrayImage8 img(37, 23, 131);
  const GrayImage8 out = clahe_grid(img, 4, 4, 3.0);
  for (auto v : out.data()) CHECK(v == out.data()[0]);
}

TEST_CASE("clahe single tile matches the hand-computed two-level mapping") {
  // One tile holding the levels 50 and 200 in equal counts.
  const int n = 16;
  GrayImage8 img(n, n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) img(x, y) = (x < n / 2) ? 50 : 200;

  std::array<long long, 256> hist{};
  hist[50] = n * n / 2;
  hist[200] = n * n / 2;
  const auto map = oracle_tile_map(hist, n * n, 3.0);

  const GrayImage8 out = clahe_grid(img, 1, 1, 3.0);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      CHECK(static_cast<int>(out(x, y)) == map[img(x, y)]);
    }
  }
}

TEST_CASE("clahe preserves rank order where a single tile mapping applies") {
  std::mt19937 rng(32);
  SUBCASE("single tile, global order") {
    const GrayImage8 img = oracles::random_gray(rng, 24, 24, 256);
    const GrayImage8 out = clahe_grid(img, 1, 1, 2.5);
    for (int i = 0; i < 600; ++i) {
      const int x1 = static_cast<int>(rng() % 24), y1 = static_cast<int>(rng() % 24);
      const int x2 = static_cast<int>(rng() % 24), y2 = static_cast<int>(rng() % 24);
      if (img(x1, y1) <= img(x2, y2)) CHECK(out(x1, y1) <= out(x2, y2));
    }
  }
  SUBCASE("corner quadrant of the corner tile, 4x4 grid") {
    // Pixels above and left of the first tile center blend nothing in.
    const GrayImage8 img = oracles::random_gray(rng, 32, 32, 256);
    const GrayImage8 out = clahe_grid(img, 4, 4, 2.5);
    for (int i = 0; i < 300; ++i) {
      const int x1 = static_cast<int>(rng() % 4), y1 = static_cast<int>(rng() % 4);
      const int x2 = static_cast<int>(rng() % 4), y2 = static_cast<int>(rng() % 4);
      if (img(x1, y1) <= img(x2, y2)) CHECK(out(x1, y1) <= out(x2, y2));
    }
  }
}

TEST_CASE("clahe output stays in range and rejects degenerate tiles") {
  std::mt19937 rng(33);
  const GrayImage8 img = oracles::random_gray(rng, 30, 20, 256);
  const GrayImage8 out = clahe(img, 8, 4.0);
  for (auto v : out.data()) {
    CHECK(v >= 0);
    CHECK(v <= 255);
  }
  CHECK_THROWS_AS(clahe(img, 1, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(clahe_grid(img, 40, 1, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(clahe_grid(img, 2, 2, 0.5), std::invalid_argument);
}

TEST_CASE("equalize_hist spreads a two-level image toward the range ends") {
  GrayImage8 img(16, 16);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) img(x, y) = (x < 8) ? 100 : 140;
  const GrayImage8 out = equalize_hist(img);
  CHECK(out(0, 0) == 128);   // cdf = 1/2
  CHECK(out(15, 0) == 255);  // cdf = 1
}

TEST_CASE("fundus_mask examples") {
  PreprocessConfig cfg;

  SUBCASE("all-black input gives an empty mask") {
    const GrayImage8 black(32, 32, 0);
    CHECK(fundus_mask(black, cfg).count() == 0);
  }
  SUBCASE("all-white input keeps everything but a 2-pixel frame") {
    const GrayImage8 white(32, 32, 255);
    const BinaryMask mask = fundus_mask(white, cfg);
    const BinaryMask expected = oracles::naive_erode(BinaryMask(32, 32, true), 5);
    CHECK(mask == expected);
    CHECK(mask.count() == 28u * 28u);
  }
  SUBCASE("bright disc shrinks by roughly the erosion radius") {
    const int n = 64;
    const double radius = 24.0;
    GrayImage8 img(n, n, 2);
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        if (std::hypot(x - 31.5, y - 31.5) <= radius) img(x, y) = 150;

    // Pipeline of the three primitive oracles.
    GrayImage8 thresholded(n, n);
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        thresholded(x, y) = img(x, y) > cfg.mask_threshold ? 1 : 0;
    const GrayImage8 median = oracles::naive_median(thresholded, 5);
    BinaryMask as_mask(n, n);
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) as_mask.set(x, y, median(x, y) != 0);
    const BinaryMask expected = oracles::naive_erode(as_mask, 5);

    const BinaryMask got = fundus_mask(img, cfg);
    CHECK(got == expected);

    // The disc survives, shrunk by about two pixels of radius.
    CHECK(got.get(31, 31));
    CHECK(got.count() > 0);
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        if (got.get(x, y))
          CHECK(std::hypot(x - 31.5, y - 31.5) <= radius);
  }
  SUBCASE("raising the threshold never adds mask pixels") {
    std::mt19937 rng(34);
    GrayImage8 img = oracles::random_gray(rng, 48, 48, 256);
    PreprocessConfig low = cfg, high = cfg;
    low.mask_threshold = 30;
    high.mask_threshold = 90;
    const BinaryMask loose = fundus_mask(img, low);
    const BinaryMask tight = fundus_mask(img, high);
    for (int y = 0; y < 48; ++y)
      for (int x = 0; x < 48; ++x)
        if (tight.get(x, y)) CHECK(loose.get(x, y));
  }
}

TEST_CASE("preprocess composes the stage") {
  PreprocessConfig cfg;

  SUBCASE("constant mid-gray image") {
    const FundusImage img = solid(40, 30, 128, 128, 128);
    const Preprocessed out = preprocess(img, cfg);
    CHECK(out.enhanced.same_size(40, 30));
    CHECK(out.fov.same_size(40, 30));
    for (auto v : out.enhanced.data()) CHECK(v == out.enhanced.data()[0]);
    // 128 > mask threshold everywhere; only the eroded frame is lost.
    CHECK(out.fov.count() == 36u * 26u);
  }
  SUBCASE("dimensions always preserved") {
    std::mt19937 rng(35);
    FundusImage img = solid(17, 29, 0, 0, 0);
    for (auto& v : img.green.data()) v = static_cast<std::uint8_t>(rng() % 256);
    const Preprocessed out = preprocess(img, cfg);
    CHECK(out.enhanced.same_size(17, 29));
    CHECK(out.fov.same_size(17, 29));
  }
  SUBCASE("CLAHE raises vessel contrast on a fundus phantom") {
    // Bright disc with a dark vessel bar through it.
    const int n = 128;
    FundusImage img = solid(n, n, 5, 5, 5);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        if (std::hypot(x - 63.5, y - 63.5) <= 56.0) {
          img.green(x, y) = (std::abs(y - 64) <= 3) ? 95 : 120;
        }
      }
    }
    const Preprocessed out = preprocess(img, cfg);

    double before_v = 0, before_b = 0, after_v = 0, after_b = 0;
    int nv = 0, nb = 0;
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        if (std::hypot(x - 63.5, y - 63.5) > 50.0) continue;
        if (std::abs(y - 64) <= 2) {  // vessel core
          before_v += img.green(x, y);
          after_v += out.enhanced(x, y);
          ++nv;
        } else if (std::abs(y - 64) >= 10) {  // disc background
          before_b += img.green(x, y);
          after_b += out.enhanced(x, y);
          ++nb;
        }
      }
    }
    REQUIRE(nv > 0);
    REQUIRE(nb > 0);
    const double before = std::abs(before_v / nv - before_b / nb);
    const double after = std::abs(after_v / nv - after_b / nb);
    CHECK(after > before);
  }
}
