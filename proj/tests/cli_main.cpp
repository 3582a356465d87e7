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

// End-to-end checks of the installed command line surface: subcommands,
// exit codes, and emitted files. The binary under test comes from the
// VESSELSEG_CLI environment variable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vesselseg/image_io.hpp"
#include "vesselseg/phantom.hpp"

using namespace vesselseg;
namespace fs = std::filesystem;

namespace {

std::string cli() {
  const char* path = std::getenv("VESSELSEG_CLI");
  REQUIRE_MESSAGE(path != nullptr, "VESSELSEG_CLI must point at the binary");
  return path;
}

int run(const std::string& args) {
  const std::string cmd = cli() + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("vesselseg-cli-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<char> read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("phantom then segment, evaluate and roc") {
  TempDir dir;
  const std::string data = (dir.path / "data").string();
  const std::string out = (dir.path / "out").string();

  REQUIRE(run("phantom --out " + data + " --id p1 --angle 20 --noise-sd 6 --seed 5") == 0);
  REQUIRE(run("phantom --out " + data + " --id p2 --kind tree --noise-sd 4 --seed 9") == 0);
  CHECK(fs::exists(dir.path / "data" / "p1.png"));
  CHECK(fs::exists(dir.path / "data" / "p1.truth.png"));

  SUBCASE("segment writes binary masks and responses, deterministically") {
    REQUIRE(run("segment --input " + data + " --layout flat --out " + out) == 0);
    for (const char* id : {"p1", "p2"}) {
      const fs::path mask_path = dir.path / "out" / (std::string(id) + ".mask.png");
      REQUIRE(fs::exists(mask_path));
      REQUIRE(fs::exists(dir.path / "out" / (std::string(id) + ".response.png")));

      const GrayImage8 mask = load_gray(mask_path);
      std::set<int> values;
      for (auto v : mask.data()) values.insert(v);
      CHECK(values.size() <= 2);
      for (int v : values) CHECK((v == 0 || v == 255));
    }

    const auto first = read_bytes(dir.path / "out" / "p1.mask.png");
    REQUIRE(run("segment --input " + data + " --layout flat --out " + out +
                " --threads 2") == 0);
    CHECK(read_bytes(dir.path / "out" / "p1.mask.png") == first);
  }

  SUBCASE("evaluate writes one row per record plus the aggregate") {
    REQUIRE(run("evaluate --input " + data + " --layout flat --out " + out) == 0);
    const auto lines = read_lines(dir.path / "out" / "metrics.csv");
    REQUIRE(lines.size() == 5);  // header + 2 rows + mean + sd
    CHECK(lines[0] == "id,sensitivity,specificity");
    CHECK(lines[1].rfind("p1,", 0) == 0);
    CHECK(lines[2].rfind("p2,", 0) == 0);
    CHECK(lines[3].rfind("mean,", 0) == 0);
    CHECK(lines[4].rfind("sd,", 0) == 0);
  }

  SUBCASE("roc writes the configured threshold grid") {
    REQUIRE(run("roc --input " + data + " --layout flat --out " + out) == 0);
    auto lines = read_lines(dir.path / "out" / "roc" / "p1.csv");
    CHECK(lines.size() == 53);  // header + thresholds 0, 5, ..., 255
    CHECK(lines[0] == "threshold,fpr,tpr");

    REQUIRE(run("roc --input " + data + " --layout flat --out " + out +
                " --roc-step 64") == 0);
    lines = read_lines(dir.path / "out" / "roc" / "p1.csv");
    CHECK(lines.size() == 6);  // 0, 64, 128, 192, 255
  }

  SUBCASE("config file values apply and flags override them") {
    const fs::path cfg_path = dir.path / "run.cfg";
    std::ofstream(cfg_path) << "roc_step = 51\n";
    REQUIRE(run("roc --input " + data + " --layout flat --out " + out +
                " --config " + cfg_path.string()) == 0);
    CHECK(read_lines(dir.path / "out" / "roc" / "p1.csv").size() == 7);

    REQUIRE(run("roc --input " + data + " --layout flat --out " + out +
                " --config " + cfg_path.string() + " --roc-step 255") == 0);
    CHECK(read_lines(dir.path / "out" / "roc" / "p1.csv").size() == 3);
  }

  SUBCASE("excluded records are skipped") {
    REQUIRE(run("segment --input " + data + " --layout flat --out " + out +
                " --exclude p2") == 0);
    CHECK(fs::exists(dir.path / "out" / "p1.mask.png"));
    CHECK_FALSE(fs::exists(dir.path / "out" / "p2.mask.png"));
  }

  SUBCASE("histogram-equalization comparison images on request") {
    REQUIRE(run("segment --input " + data + " --layout flat --out " + out +
                " --write-histeq") == 0);
    CHECK(fs::exists(dir.path / "out" / "p1.histeq.png"));
    CHECK(fs::exists(dir.path / "out" / "p2.histeq.png"));
  }
}

TEST_CASE("drive layout with TIFF images and fov masks") {
  TempDir dir;
  const fs::path root = dir.path / "drive";
  fs::create_directories(root / "images");
  fs::create_directories(root / "1st_manual");
  fs::create_directories(root / "mask");

  // A small synthetic subject in DRIVE file naming, image stored as TIFF.
  PhantomSpec spec;
  spec.width = 96;
  spec.height = 96;
  spec.angle_deg = 120.0;
  spec.noise_sd = 5.0;
  const Phantom p = make_phantom(spec, 21);
  save_tiff(root / "images" / "21_training.tif", p.image);
  save_png(root / "1st_manual" / "21_manual1.png", p.truth);
  save_png(root / "mask" / "21_training_mask.png", BinaryMask(96, 96, true));

  const std::string out = (dir.path / "out").string();
  REQUIRE(run("evaluate --input " + root.string() + " --layout drive --out " +
              out) == 0);
  const auto lines = read_lines(dir.path / "out" / "metrics.csv");
  REQUIRE(lines.size() == 4);
  CHECK(lines[1].rfind("21_training,", 0) == 0);
}

TEST_CASE("failure exit codes") {
  TempDir dir;
  const std::string out = (dir.path / "out").string();

  SUBCASE("missing input directory is a configuration error") {
    CHECK(run("segment --input " + (dir.path / "nope").string() + " --out " + out) == 2);
  }
  SUBCASE("empty input directory is a configuration error") {
    const fs::path empty = dir.path / "empty";
    fs::create_directories(empty);
    CHECK(run("segment --input " + empty.string() + " --out " + out) == 2);
  }
  SUBCASE("bad config file is a configuration error") {
    const fs::path data = dir.path / "data";
    fs::create_directories(data);
    save_png(data / "img.png", GrayImage8(16, 16, 128));
    const fs::path cfg_path = dir.path / "bad.cfg";
    std::ofstream(cfg_path) << "bogus_key = 1\n";
    CHECK(run("segment --input " + data.string() + " --out " + out +
              " --config " + cfg_path.string()) == 2);
    std::ofstream(cfg_path) << "beta = 0.1\n";
    CHECK(run("segment --input " + data.string() + " --out " + out +
              " --config " + cfg_path.string()) == 2);
  }
  SUBCASE("unknown flag is a configuration error") {
    CHECK(run("segment --frobnicate") == 2);
  }
  SUBCASE("help succeeds") {
    CHECK(run("--help") == 0);
    CHECK(run("segment --help") == 0);
  }
  SUBCASE("invalid phantom parameters are a configuration error") {
    CHECK(run("phantom --out " + out + " --contrast 0") == 2);
    CHECK(run("phantom --out " + out + " --vessel-width 0.5") == 2);
  }
  SUBCASE("record without truth fails evaluate with exit 1") {
    const fs::path data = dir.path / "data";
    fs::create_directories(data);
    REQUIRE(run("phantom --out " + data.string() + " --id ok --noise-sd 5") == 0);
    save_png(data / "lonely.png", GrayImage8(32, 32, 128));
    CHECK(run("evaluate --input " + data.string() + " --layout flat --out " +
              out) == 1);
    // The paired record still produced its row.
    const auto lines = read_lines(dir.path / "out" / "metrics.csv");
    CHECK(lines.size() == 4);  // header + ok + mean + sd
    CHECK(lines[1].rfind("ok,", 0) == 0);
  }
}
