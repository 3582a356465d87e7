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

#include "vesselseg/image_io.hpp"

#include <png.h>
#include <tiffio.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

namespace vesselseg {

namespace {

std::string lower_ext(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// ---------------------------------------------------------------- PNG ----

FundusImage decode_png(const std::filesystem::path& path) {
  FilePtr file(std::fopen(path.string().c_str(), "rb"));
  if (!file) throw IoError("cannot open " + path.string());

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng init failed");
  }
  std::vector<png_bytep> row_ptrs;
  std::vector<std::uint8_t> rgb;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("PNG decode failed: " + path.string());
  }

  png_init_io(png, file.get());
  png_read_info(png, info);

  // Normalize everything to 8-bit RGB.
  png_set_strip_16(png);
  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);

  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  rgb.resize(static_cast<std::size_t>(w) * h * 3);
  row_ptrs.resize(h);
  for (int y = 0; y < h; ++y) {
    row_ptrs[y] = rgb.data() + static_cast<std::size_t>(y) * w * 3;
  }
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  FundusImage img{GrayImage8(w, h), GrayImage8(w, h), GrayImage8(w, h)};
  for (std::size_t i = 0; i < static_cast<std::size_t>(w) * h; ++i) {
    img.red.data()[i] = rgb[3 * i];
    img.green.data()[i] = rgb[3 * i + 1];
    img.blue.data()[i] = rgb[3 * i + 2];
  }
  return img;
}

void encode_png(const std::filesystem::path& path, int w, int h, int channels,
                const std::uint8_t* interleaved) {
  FilePtr file(std::fopen(path.string().c_str(), "wb"));
  if (!file) throw IoError("cannot create " + path.string());

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng init failed");
  }
  std::vector<png_bytep> row_ptrs(h);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encode failed: " + path.string());
  }

  png_init_io(png, file.get());
  png_set_IHDR(png, info, w, h, 8,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < h; ++y) {
    row_ptrs[y] = const_cast<png_bytep>(interleaved) +
                  static_cast<std::size_t>(y) * w * channels;
  }
  png_write_image(png, row_ptrs.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

// ---------------------------------------------------------------- PNM ----

int pnm_next_int(std::istream& in) {
  // Skips whitespace and '#' comments between header tokens.
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int value = 0;
  if (!(in >> value)) throw IoError("malformed PNM header");
  return value;
}

FundusImage decode_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char p = 0, kind = 0;
  in.get(p).get(kind);
  if (p != 'P' || (kind != '2' && kind != '3' && kind != '5' && kind != '6')) {
    throw IoError("unsupported PNM variant in " + path.string());
  }
  const int w = pnm_next_int(in);
  const int h = pnm_next_int(in);
  const int maxval = pnm_next_int(in);
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) {
    throw IoError("unsupported PNM geometry/depth in " + path.string());
  }
  const bool color = kind == '3' || kind == '6';
  const bool ascii = kind == '2' || kind == '3';
  const std::size_t samples = static_cast<std::size_t>(w) * h * (color ? 3 : 1);
  std::vector<std::uint8_t> buf(samples);
  if (ascii) {
    for (auto& s : buf) s = static_cast<std::uint8_t>(pnm_next_int(in));
  } else {
    in.get();  // single whitespace after maxval
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(samples));
    if (in.gcount() != static_cast<std::streamsize>(samples)) {
      throw IoError("truncated PNM payload in " + path.string());
    }
  }
  FundusImage img{GrayImage8(w, h), GrayImage8(w, h), GrayImage8(w, h)};
  for (std::size_t i = 0; i < static_cast<std::size_t>(w) * h; ++i) {
    if (color) {
      img.red.data()[i] = buf[3 * i];
      img.green.data()[i] = buf[3 * i + 1];
      img.blue.data()[i] = buf[3 * i + 2];
    } else {
      img.red.data()[i] = img.green.data()[i] = img.blue.data()[i] = buf[i];
    }
  }
  return img;
}

// --------------------------------------------------------------- TIFF ----

FundusImage decode_tiff(const std::filesystem::path& path) {
  TIFFSetWarningHandler(nullptr);
  TIFF* tif = TIFFOpen(path.string().c_str(), "r");
  if (!tif) throw IoError("cannot open " + path.string());
  std::uint32_t w = 0, h = 0;
  TIFFGetField(tif, TIFFTAG_IMAGEWIDTH, &w);
  TIFFGetField(tif, TIFFTAG_IMAGELENGTH, &h);
  if (w == 0 || h == 0) {
    TIFFClose(tif);
    throw IoError("bad TIFF geometry in " + path.string());
  }
  std::vector<std::uint32_t> raster(static_cast<std::size_t>(w) * h);
  const int ok =
      TIFFReadRGBAImageOriented(tif, w, h, raster.data(), ORIENTATION_TOPLEFT, 0);
  TIFFClose(tif);
  if (!ok) throw IoError("TIFF decode failed: " + path.string());

  FundusImage img{GrayImage8(static_cast<int>(w), static_cast<int>(h)),
                  GrayImage8(static_cast<int>(w), static_cast<int>(h)),
                  GrayImage8(static_cast<int>(w), static_cast<int>(h))};
  for (std::size_t i = 0; i < raster.size(); ++i) {
    img.red.data()[i] = static_cast<std::uint8_t>(TIFFGetR(raster[i]));
    img.green.data()[i] = static_cast<std::uint8_t>(TIFFGetG(raster[i]));
    img.blue.data()[i] = static_cast<std::uint8_t>(TIFFGetB(raster[i]));
  }
  return img;
}

}  // namespace

bool supported_image_file(const std::filesystem::path& path) {
  const std::string ext = lower_ext(path);
  return ext == ".png" || ext == ".ppm" || ext == ".pgm" || ext == ".pbm" ||
         ext == ".tif" || ext == ".tiff";
}

FundusImage load_fundus(const std::filesystem::path& path) {
  const std::string ext = lower_ext(path);
  if (ext == ".png") return decode_png(path);
  if (ext == ".ppm" || ext == ".pgm" || ext == ".pbm") return decode_pnm(path);
  if (ext == ".tif" || ext == ".tiff") return decode_tiff(path);
  throw IoError("unsupported image format '" + ext + "' for " + path.string() +
                " (supported: png, ppm, pgm, tif)");
}

GrayImage8 load_gray(const std::filesystem::path& path) {
  return load_fundus(path).green;
}

BinaryMask load_mask(const std::filesystem::path& path) {
  const FundusImage img = load_fundus(path);
  BinaryMask mask(img.width(), img.height());
  for (std::size_t i = 0; i < mask.data().size(); ++i) {
    mask.data()[i] =
        (img.red.data()[i] || img.green.data()[i] || img.blue.data()[i]) ? 1
                                                                         : 0;
  }
  return mask;
}

void save_png(const std::filesystem::path& path, const GrayImage8& img) {
  encode_png(path, img.width(), img.height(), 1, img.data().data());
}

void save_png(const std::filesystem::path& path, const FundusImage& img) {
  img.validate();
  std::vector<std::uint8_t> rgb(img.red.data().size() * 3);
  for (std::size_t i = 0; i < img.red.data().size(); ++i) {
    rgb[3 * i] = img.red.data()[i];
    rgb[3 * i + 1] = img.green.data()[i];
    rgb[3 * i + 2] = img.blue.data()[i];
  }
  encode_png(path, img.width(), img.height(), 3, rgb.data());
}

void save_png(const std::filesystem::path& path, const BinaryMask& mask) {
  GrayImage8 img(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.data().size(); ++i) {
    img.data()[i] = mask.data()[i] ? 255 : 0;
  }
  save_png(path, img);
}

void save_ppm(const std::filesystem::path& path, const GrayImage8& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + path.string());
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data().data()),
            static_cast<std::streamsize>(img.data().size()));
  if (!out) throw IoError("write failed: " + path.string());
}

void save_tiff(const std::filesystem::path& path, const GrayImage8& img) {
  TIFF* tif = TIFFOpen(path.string().c_str(), "w");
  if (!tif) throw IoError("cannot create " + path.string());
  TIFFSetField(tif, TIFFTAG_IMAGEWIDTH, static_cast<std::uint32_t>(img.width()));
  TIFFSetField(tif, TIFFTAG_IMAGELENGTH, static_cast<std::uint32_t>(img.height()));
  TIFFSetField(tif, TIFFTAG_SAMPLESPERPIXEL, 1);
  TIFFSetField(tif, TIFFTAG_BITSPERSAMPLE, 8);
  TIFFSetField(tif, TIFFTAG_ORIENTATION, ORIENTATION_TOPLEFT);
  TIFFSetField(tif, TIFFTAG_PLANARCONFIG, PLANARCONFIG_CONTIG);
  TIFFSetField(tif, TIFFTAG_PHOTOMETRIC, PHOTOMETRIC_MINISBLACK);
  TIFFSetField(tif, TIFFTAG_COMPRESSION, COMPRESSION_NONE);
  for (int y = 0; y < img.height(); ++y) {
    if (TIFFWriteScanline(tif, const_cast<std::uint8_t*>(img.row(y).data()), y,
                          0) < 0) {
      TIFFClose(tif);
      throw IoError("TIFF write failed: " + path.string());
    }
  }
  TIFFClose(tif);
}

}  // namespace vesselseg
