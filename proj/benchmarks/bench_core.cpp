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

#include <benchmark/benchmark.h>

#include <random>

#include "vesselseg/entropic.hpp"
#include "vesselseg/gabor.hpp"
#include "vesselseg/phantom.hpp"
#include "vesselseg/pipeline.hpp"
#include "vesselseg/preprocess.hpp"
#include "vesselseg/raster.hpp"

using namespace vesselseg;

namespace {

// DRIVE-sized frame for everything below.
constexpr int kWidth = 565;
constexpr int kHeight = 584;

GrayImageF test_image() {
  std::mt19937 rng(1);
  GrayImageF img(kWidth, kHeight);
  std::uniform_real_distribution<double> dist(0.0, 255.0);
  for (auto& v : img.data()) v = dist(rng);
  return img;
}

GrayImage8 test_image8() {
  std::mt19937 rng(2);
  GrayImage8 img(kWidth, kHeight);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng() % 256);
  return img;
}

void BM_Convolve2d(benchmark::State& state) {
  const GrayImageF img = test_image();
  const int r = static_cast<int>(state.range(0));
  RealMatrix kernel(2 * r + 1, 2 * r + 1, 0.01);
  for (auto _ : state) {
    GrayImageF out = convolve2d(img, kernel);
    benchmark::DoNotOptimize(out.data().data());
  }
  state.SetItemsProcessed(state.iterations() * img.pixel_count());
}
BENCHMARK(BM_Convolve2d)->Arg(3)->Arg(6)->Arg(9);

void BM_ApplyBank(benchmark::State& state) {
  const GrayImageF img = test_image();
  const GaborParams params = derive_params(6.0, 0.5);
  const OrientationSet bank = OrientationSet::sweep();
  for (auto _ : state) {
    ResponseMap out = apply_bank(img, params, bank);
    benchmark::DoNotOptimize(out.data().data());
  }
  state.SetItemsProcessed(state.iterations() * img.pixel_count());
}
BENCHMARK(BM_ApplyBank);

void BM_MedianFilter(benchmark::State& state) {
  const GrayImage8 img = test_image8();
  const int side = static_cast<int>(state.range(0));
  for (auto _ : state) {
    GrayImage8 out = median_filter(img, side);
    benchmark::DoNotOptimize(out.data().data());
  }
  state.SetItemsProcessed(state.iterations() * img.pixel_count());
}
BENCHMARK(BM_MedianFilter)->Arg(3)->Arg(5);

void BM_Clahe(benchmark::State& state) {
  const GrayImage8 img = test_image8();
  for (auto _ : state) {
    GrayImage8 out = clahe_grid(img, 8, 8, 3.0);
    benchmark::DoNotOptimize(out.data().data());
  }
  state.SetItemsProcessed(state.iterations() * img.pixel_count());
}
BENCHMARK(BM_Clahe);

void BM_EntropicThreshold(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  std::mt19937 rng(3);
  GrayImage8 img(kWidth, kHeight);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng() % levels);
  for (auto _ : state) {
    const EntropyScan scan =
        select_threshold(normalize_glcm(build_glcm(img, levels)));
    benchmark::DoNotOptimize(scan.selected);
  }
}
BENCHMARK(BM_EntropicThreshold)->Arg(64)->Arg(256);

void BM_FullPipeline(benchmark::State& state) {
  PhantomSpec spec;
  spec.width = kWidth;
  spec.height = kHeight;
  spec.noise_sd = 8.0;
  const Phantom p = make_phantom(spec, 17);
  const FundusImage img{p.image, p.image, p.image};
  const RunConfig cfg;
  for (auto _ : state) {
    PipelineResult result = run_pipeline(img, cfg);
    benchmark::DoNotOptimize(result.mask.data().data());
  }
}
BENCHMARK(BM_FullPipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
