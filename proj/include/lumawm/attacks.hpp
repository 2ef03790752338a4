#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <type_traits>
#include <variant>
#include <vector>

#include "lumawm/colorspace.hpp"
#include "lumawm/error.hpp"
#include "lumawm/pixmap.hpp"
#include "lumawm/selection.hpp"

namespace lumawm {

struct Rect {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t width = 0;
  std::size_t height = 0;

  bool contains(std::size_t px, std::size_t py) const noexcept {
    return px >= x && py >= y && px - x < width && py - y < height;
  }
  std::size_t area() const noexcept { return width * height; }
};

/// Centered rectangle of half the width and half the height.
inline Rect center_half_rect(std::size_t width, std::size_t height) noexcept {
  return {width / 4, height / 4, width / 2, height / 2};
}

struct CropAttack {
  Rect keep;
};
struct GrayscaleAttack {};
struct CompressAttack {
  double quality = 0.75;
};

using AttackSpec = std::variant<CropAttack, GrayscaleAttack, CompressAttack>;

/// Blacks out everything outside `keep`; dimensions are unchanged.
inline RgbImage crop_attack(const RgbImage& img, const Rect& keep) {
  if (keep.width == 0 || keep.height == 0 || keep.x > img.width() || keep.y > img.height() ||
      keep.width > img.width() - keep.x || keep.height > img.height() - keep.y) {
    throw Error(ErrorKind::RectOutOfBounds, "crop rectangle must be non-empty and inside the image");
  }
  RgbImage out = img;
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      if (!keep.contains(x, y)) out.at(x, y) = Rgb{};
    }
  }
  return out;
}

/// Each pixel becomes (g, g, g) with g = round(luminance).
inline RgbImage grayscale_attack(const RgbImage& img) {
  RgbImage out = img;
  for (Rgb& p : out.pixels()) {
    const std::uint8_t g = to_channel(luminance(p));
    p = {g, g, g};
  }
  return out;
}

// JPEG Annex K luminance table, row-major.
inline constexpr std::array<int, 64> kJpegLuminanceTable{
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99,
};

/// Quality in (0, 1] maps to table scale (1 - quality) * 2 + 0.02.
inline double quality_scale(double quality) { return (1.0 - quality) * 2.0 + 0.02; }

/// Quantizer step per coefficient: scaled table entries, floored at 1.
inline std::array<double, 64> quantizer_steps(double quality) {
  const double scale = quality_scale(quality);
  std::array<double, 64> steps{};
  for (std::size_t i = 0; i < steps.size(); ++i) steps[i] = std::max(1.0, scale * kJpegLuminanceTable[i]);
  return steps;
}

namespace detail {

// Orthonormal 8-point DCT-II basis: basis[u][x].
inline const std::array<std::array<double, 8>, 8>& dct_basis() {
  static const auto basis = [] {
    std::array<std::array<double, 8>, 8> m{};
    for (std::size_t u = 0; u < 8; ++u) {
      const double c = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (std::size_t x = 0; x < 8; ++x) {
        m[u][x] = c * std::cos((2.0 * static_cast<double>(x) + 1.0) * static_cast<double>(u) * std::numbers::pi / 16.0);
      }
    }
    return m;
  }();
  return basis;
}

using Block8 = std::array<double, 64>;

inline Block8 forward_dct(const Block8& in) {
  const auto& m = dct_basis();
  Block8 tmp{}, out{};
  for (std::size_t y = 0; y < 8; ++y)
    for (std::size_t u = 0; u < 8; ++u) {
      double s = 0.0;
      for (std::size_t x = 0; x < 8; ++x) s += m[u][x] * in[y * 8 + x];
      tmp[y * 8 + u] = s;
    }
  for (std::size_t v = 0; v < 8; ++v)
    for (std::size_t u = 0; u < 8; ++u) {
      double s = 0.0;
      for (std::size_t y = 0; y < 8; ++y) s += m[v][y] * tmp[y * 8 + u];
      out[v * 8 + u] = s;
    }
  return out;
}

inline Block8 inverse_dct(const Block8& in) {
  const auto& m = dct_basis();
  Block8 tmp{}, out{};
  for (std::size_t v = 0; v < 8; ++v)
    for (std::size_t x = 0; x < 8; ++x) {
      double s = 0.0;
      for (std::size_t u = 0; u < 8; ++u) s += m[u][x] * in[v * 8 + u];
      tmp[v * 8 + x] = s;
    }
  for (std::size_t y = 0; y < 8; ++y)
    for (std::size_t x = 0; x < 8; ++x) {
      double s = 0.0;
      for (std::size_t v = 0; v < 8; ++v) s += m[v][y] * tmp[v * 8 + x];
      out[y * 8 + x] = s;
    }
  return out;
}

inline void quantize_plane(std::vector<double>& plane, std::size_t width, std::size_t height,
                           const std::array<double, 64>& steps) {
  for (std::size_t by = 0; by + kBlockSize <= height; by += kBlockSize) {
    for (std::size_t bx = 0; bx + kBlockSize <= width; bx += kBlockSize) {
      Block8 block{};
      for (std::size_t y = 0; y < 8; ++y)
        for (std::size_t x = 0; x < 8; ++x) block[y * 8 + x] = plane[(by + y) * width + bx + x];
      Block8 coeffs = forward_dct(block);
      for (std::size_t i = 0; i < 64; ++i) coeffs[i] = std::round(coeffs[i] / steps[i]) * steps[i];
      const Block8 restored = inverse_dct(coeffs);
      for (std::size_t y = 0; y < 8; ++y)
        for (std::size_t x = 0; x < 8; ++x) plane[(by + y) * width + bx + x] = restored[y * 8 + x];
    }
  }
}

}  // namespace detail

/// JPEG-style degradation: per full 8x8 block of each YCbCr plane, orthonormal DCT, quantize with
/// the scaled luminance table, dequantize, inverse DCT. Remainder pixels pass through.
inline RgbImage compress_attack(const RgbImage& img, double quality) {
  if (!(quality > 0.0 && quality <= 1.0)) throw Error(ErrorKind::InvalidParameter, "quality must lie in (0, 1]");
  const auto steps = quantizer_steps(quality);
  const YcbcrImage before = rgb_to_ycbcr(img);
  YcbcrImage after = before;
  detail::quantize_plane(after.y, after.width, after.height, steps);
  detail::quantize_plane(after.cb, after.width, after.height, steps);
  detail::quantize_plane(after.cr, after.width, after.height, steps);
  return apply_ycbcr_change(img, before, after);
}

inline RgbImage apply_attack(const RgbImage& img, const AttackSpec& spec) {
  return std::visit(
      [&](const auto& attack) -> RgbImage {
        using T = std::decay_t<decltype(attack)>;
        if constexpr (std::is_same_v<T, CropAttack>) {
          return crop_attack(img, attack.keep);
        } else if constexpr (std::is_same_v<T, GrayscaleAttack>) {
          return grayscale_attack(img);
        } else {
          return compress_attack(img, attack.quality);
        }
      },
      spec);
}

}  // namespace lumawm
