// Copyright 2026 The trajbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trajbench/ingest/image.hpp"

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <vector>

#include "trajbench/error.hpp"

namespace trajbench::ingest {
namespace {

struct ReadCursor {
  std::span<const std::uint8_t> data;
  std::size_t pos = 0;
};

void read_callback(png_structp png, png_bytep out, png_size_t n) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cur->data.size() - cur->pos < n) png_error(png, "unexpected end of PNG data");
  std::memcpy(out, cur->data.data() + cur->pos, n);
  cur->pos += n;
}

void write_callback(png_structp png, png_bytep in, png_size_t n) {
  auto* out = static_cast<Bytes*>(png_get_io_ptr(png));
  out->insert(out->end(), in, in + n);
}

void flush_callback(png_structp) {}

// libpng reports errors by longjmp; the message is stashed for the throw
// that follows in the frame holding the jmp_buf.
void error_callback(png_structp png, png_const_charp msg) {
  auto* slot = static_cast<std::string*>(png_get_error_ptr(png));
  if (slot) *slot = msg;
  png_longjmp(png, 1);
}

void warning_callback(png_structp, png_const_charp) {}

}  // namespace

std::string to_string(ImageEncoding e) { return e == ImageEncoding::kPng ? "png" : "raw"; }

ImageEncoding image_encoding_from_string(const std::string& s) {
  if (s == "raw") return ImageEncoding::kRaw;
  if (s == "png") return ImageEncoding::kPng;
  throw Error("unsupported image encoding '" + s + "' (expected raw or png)");
}

Image decode_png(std::span<const std::uint8_t> png_bytes) {
  if (png_bytes.size() < 8 || png_sig_cmp(png_bytes.data(), 0, 8) != 0)
    throw Error("not a PNG stream");

  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, error_callback,
                                           warning_callback);
  if (!png) throw Error("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error("png_create_info_struct failed");
  }

  ReadCursor cursor{png_bytes};
  Image img;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(message.empty() ? "PNG decode failed" : message);
  }
  png_set_read_fn(png, &cursor, read_callback);
  png_read_info(png, info);

  png_set_strip_16(png);
  png_set_packing(png);
  png_set_expand(png);
  png_read_update_info(png, info);

  img.width = static_cast<int>(png_get_image_width(png, info));
  img.height = static_cast<int>(png_get_image_height(png, info));
  img.channels = png_get_channels(png, info);
  std::size_t rowbytes = png_get_rowbytes(png, info);
  if (rowbytes != static_cast<std::size_t>(img.width) * img.channels)
    png_error(png, "unexpected PNG row layout");
  img.data.resize(img.expected_size());
  rows.resize(static_cast<std::size_t>(img.height));
  for (int y = 0; y < img.height; ++y) rows[y] = img.data.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

Bytes encode_png(const Image& image) {
  if (!image.valid()) throw Error("cannot encode invalid image");
  static constexpr int kColorTypes[] = {PNG_COLOR_TYPE_GRAY, PNG_COLOR_TYPE_GRAY_ALPHA,
                                        PNG_COLOR_TYPE_RGB, PNG_COLOR_TYPE_RGB_ALPHA};
  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, error_callback,
                                            warning_callback);
  if (!png) throw Error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("png_create_info_struct failed");
  }

  Bytes out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(message.empty() ? "PNG encode failed" : message);
  }
  png_set_write_fn(png, &out, write_callback, flush_callback);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), 8, kColorTypes[image.channels - 1],
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::size_t rowbytes = static_cast<std::size_t>(image.width) * image.channels;
  for (int y = 0; y < image.height; ++y)
    png_write_row(png, const_cast<png_bytep>(image.data.data() + y * rowbytes));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

Image image_from_raw(Bytes data, int width, int height, int channels) {
  Image img{width, height, channels, std::move(data)};
  if (width <= 0 || height <= 0) throw Error("image dimensions must be positive");
  if (channels < 1 || channels > 4) throw UnsupportedChannels(channels);
  if (img.data.size() != img.expected_size())
    throw Error("raw image has " + std::to_string(img.data.size()) + " bytes, expected " +
                std::to_string(img.expected_size()));
  return img;
}

}  // namespace trajbench::ingest
