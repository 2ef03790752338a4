#pragma once

#include <bitset>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "lumawm/error.hpp"

namespace lumawm {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// 8-bit interleaved RGB raster, row-major.
class RgbImage {
 public:
  RgbImage(std::size_t width, std::size_t height, Rgb fill = {})
      : width_(width), height_(height), pixels_(checked_count(width, height), fill) {}

  RgbImage(std::size_t width, std::size_t height, std::vector<Rgb> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (pixels_.size() != checked_count(width, height)) {
      throw Error(ErrorKind::WrongDimensions, "pixel count does not match width*height");
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }

  const Rgb& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  Rgb& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }

  const std::vector<Rgb>& pixels() const noexcept { return pixels_; }
  std::vector<Rgb>& pixels() noexcept { return pixels_; }

  bool same_size(const RgbImage& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  static std::size_t checked_count(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) {
      throw Error(ErrorKind::WrongDimensions, "image dimensions must be at least 1x1");
    }
    return width * height;
  }

  std::size_t width_;
  std::size_t height_;
  std::vector<Rgb> pixels_;
};

/// Fixed 32x32 binary watermark. Bit 1 is white (255), bit 0 is black (0).
class WatermarkBitmap {
 public:
  static constexpr std::size_t kSide = 32;
  static constexpr std::size_t kBits = kSide * kSide;

  WatermarkBitmap() = default;
  explicit WatermarkBitmap(const std::bitset<kBits>& bits) : bits_(bits) {}

  static WatermarkBitmap all_white() { return WatermarkBitmap(std::bitset<kBits>().set()); }
  static WatermarkBitmap all_black() { return WatermarkBitmap(); }

  bool white(std::size_t row, std::size_t col) const { return bits_[row * kSide + col]; }
  void set_white(std::size_t row, std::size_t col, bool white) { bits_[row * kSide + col] = white; }

  /// Row-major bit access, index in [0, 1024).
  bool bit(std::size_t index) const { return bits_[index]; }
  void set_bit(std::size_t index, bool white) { bits_[index] = white; }

  /// 255 for white, 0 for black.
  std::uint8_t value(std::size_t row, std::size_t col) const { return white(row, col) ? 255 : 0; }

  WatermarkBitmap complement() const { return WatermarkBitmap(~bits_); }
  std::size_t count_white() const noexcept { return bits_.count(); }
  const std::bitset<kBits>& bits() const noexcept { return bits_; }

  friend bool operator==(const WatermarkBitmap&, const WatermarkBitmap&) = default;

 private:
  std::bitset<kBits> bits_;
};

namespace detail {

// Tokenizer for the textual part of a netpbm header. '#' comments run to end of line.
class PnmCursor {
 public:
  explicit PnmCursor(std::string_view data) : data_(data) {}

  std::string_view magic() {
    if (data_.size() < 2 || data_[0] != 'P') {
      throw Error(ErrorKind::MalformedHeader, "missing netpbm magic number");
    }
    pos_ = 2;
    return data_.substr(0, 2);
  }

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t unsigned_field(std::string_view what) {
    const std::size_t before = pos_;
    skip_space_and_comments();
    if (pos_ == before) {
      throw Error(ErrorKind::MalformedHeader, std::string("expected whitespace before ") + std::string(what));
    }
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(data_[pos_] - '0');
      if (++digits > 9) throw Error(ErrorKind::MalformedHeader, std::string(what) + " is too large");
      ++pos_;
    }
    if (digits == 0) throw Error(ErrorKind::MalformedHeader, std::string("expected ") + std::string(what));
    return value;
  }

  // Binary formats: exactly one whitespace byte separates the header from the raster.
  std::string_view binary_payload() {
    if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
      throw Error(ErrorKind::MalformedHeader, "header must end with a single whitespace byte");
    }
    return data_.substr(pos_ + 1);
  }

  std::string_view rest() const { return data_.substr(pos_); }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

inline void check_payload_length(std::size_t actual, std::size_t expected) {
  if (actual < expected) {
    throw Error(ErrorKind::TruncatedPayload,
                "expected " + std::to_string(expected) + " payload bytes, found " + std::to_string(actual));
  }
  if (actual > expected) {
    throw Error(ErrorKind::ExcessPayload,
                "expected " + std::to_string(expected) + " payload bytes, found " + std::to_string(actual));
  }
}

}  // namespace detail

/// Decodes a binary P6 pixmap with maxval 255. Header comments are accepted.
inline RgbImage read_rgb_image(std::string_view content) {
  detail::PnmCursor cursor(content);
  if (cursor.magic() != "P6") throw Error(ErrorKind::MalformedHeader, "expected P6 magic");
  const std::size_t width = cursor.unsigned_field("width");
  const std::size_t height = cursor.unsigned_field("height");
  const std::size_t maxval = cursor.unsigned_field("maxval");
  if (width == 0 || height == 0) throw Error(ErrorKind::MalformedHeader, "zero image dimension");
  if (maxval != 255) throw Error(ErrorKind::MalformedHeader, "only maxval 255 is supported");

  const std::string_view payload = cursor.binary_payload();
  detail::check_payload_length(payload.size(), 3 * width * height);

  std::vector<Rgb> pixels(width * height);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = {static_cast<std::uint8_t>(payload[3 * i]), static_cast<std::uint8_t>(payload[3 * i + 1]),
                 static_cast<std::uint8_t>(payload[3 * i + 2])};
  }
  return RgbImage(width, height, std::move(pixels));
}

/// Canonical P6: "P6\n<w> <h>\n255\n" followed by the raster.
inline std::string write_rgb_image(const RgbImage& img) {
  std::string out = "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + 3 * img.pixel_count());
  std::size_t i = header;
  for (const Rgb& p : img.pixels()) {
    out[i++] = static_cast<char>(p.r);
    out[i++] = static_cast<char>(p.g);
    out[i++] = static_cast<char>(p.b);
  }
  return out;
}

/// Decodes a 32x32 P1 or P4 bitmap. PBM ink (1 = black) is inverted so that stored 1 means white.
inline WatermarkBitmap read_watermark(std::string_view content) {
  constexpr std::size_t side = WatermarkBitmap::kSide;
  detail::PnmCursor cursor(content);
  const std::string_view magic = cursor.magic();
  if (magic != "P1" && magic != "P4") throw Error(ErrorKind::MalformedHeader, "expected P1 or P4 magic");
  const std::size_t width = cursor.unsigned_field("width");
  const std::size_t height = cursor.unsigned_field("height");
  if (width != side || height != side) {
    throw Error(ErrorKind::WrongDimensions,
                "watermark must be 32x32, got " + std::to_string(width) + "x" + std::to_string(height));
  }

  WatermarkBitmap wm;
  if (magic == "P4") {
    const std::string_view payload = cursor.binary_payload();
    constexpr std::size_t row_bytes = (side + 7) / 8;
    detail::check_payload_length(payload.size(), row_bytes * side);
    for (std::size_t row = 0; row < side; ++row) {
      for (std::size_t col = 0; col < side; ++col) {
        const auto byte = static_cast<unsigned char>(payload[row * row_bytes + col / 8]);
        const bool ink = (byte >> (7 - col % 8)) & 1U;
        wm.set_white(row, col, !ink);
      }
    }
    return wm;
  }

  // P1: digits may be packed without separators.
  std::size_t index = 0;
  const std::string_view text = cursor.rest();
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n' && text[i] != '\r') ++i;
    } else if (c == '0' || c == '1') {
      if (index >= WatermarkBitmap::kBits) throw Error(ErrorKind::ExcessPayload, "more than 1024 P1 samples");
      wm.set_bit(index++, c == '0');
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw Error(ErrorKind::MalformedHeader, "unexpected character in P1 raster");
    }
  }
  if (index < WatermarkBitmap::kBits) {
    throw Error(ErrorKind::TruncatedPayload, "expected 1024 P1 samples, found " + std::to_string(index));
  }
  return wm;
}

/// Canonical P4 with the same ink inversion as read_watermark.
inline std::string write_watermark(const WatermarkBitmap& wm) {
  constexpr std::size_t side = WatermarkBitmap::kSide;
  std::string out = "P4\n32 32\n";
  for (std::size_t row = 0; row < side; ++row) {
    for (std::size_t byte = 0; byte < side / 8; ++byte) {
      unsigned value = 0;
      for (std::size_t bit = 0; bit < 8; ++bit) {
        const bool ink = !wm.white(row, byte * 8 + bit);
        value = (value << 1) | (ink ? 1U : 0U);
      }
      out.push_back(static_cast<char>(value));
    }
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline RgbImage load_rgb_image(const std::string& path) { return read_rgb_image(read_file(path)); }
inline WatermarkBitmap load_watermark(const std::string& path) { return read_watermark(read_file(path)); }

}  // namespace lumawm
