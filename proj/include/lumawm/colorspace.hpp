#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "lumawm/pixmap.hpp"

namespace lumawm {

// Forward and inverse matrices exactly as published for this scheme. They resemble YIQ and are
// not an exact inverse pair (the blue column of the chroma-2 row carries the opposite sign).
inline constexpr std::array<std::array<double, 3>, 3> kRgbToYcbcr{{
    {0.299, 0.587, 0.114},
    {0.596, -0.275, -0.321},
    {0.212, -0.523, -0.311},
}};

inline constexpr std::array<std::array<double, 3>, 3> kYcbcrToRgb{{
    {1.0, 0.956, 0.620},
    {1.0, -0.272, -0.647},
    {1.0, -1.108, 1.705},
}};

struct Ycbcr {
  double y = 0.0;
  double cb = 0.0;
  double cr = 0.0;
};

/// Real-valued planes; not clamped or rounded.
struct YcbcrImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> y;
  std::vector<double> cb;
  std::vector<double> cr;

  std::size_t index(std::size_t x, std::size_t row) const noexcept { return row * width + x; }
  Ycbcr at(std::size_t x, std::size_t row) const {
    const std::size_t i = index(x, row);
    return {y[i], cb[i], cr[i]};
  }
};

inline double luminance(const Rgb& p) noexcept {
  const auto& m = kRgbToYcbcr[0];
  return m[0] * p.r + m[1] * p.g + m[2] * p.b;
}

inline Ycbcr rgb_to_ycbcr(const Rgb& p) noexcept {
  const auto& m = kRgbToYcbcr;
  return {luminance(p), m[1][0] * p.r + m[1][1] * p.g + m[1][2] * p.b,
          m[2][0] * p.r + m[2][1] * p.g + m[2][2] * p.b};
}

/// Round half away from zero, then clamp into a byte.
inline std::uint8_t to_channel(double v) noexcept {
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

inline std::array<double, 3> ycbcr_to_rgb_linear(const Ycbcr& c) noexcept {
  std::array<double, 3> out{};
  for (std::size_t k = 0; k < 3; ++k) {
    out[k] = kYcbcrToRgb[k][0] * c.y + kYcbcrToRgb[k][1] * c.cb + kYcbcrToRgb[k][2] * c.cr;
  }
  return out;
}

inline Rgb ycbcr_to_rgb(const Ycbcr& c) noexcept {
  const auto v = ycbcr_to_rgb_linear(c);
  return {to_channel(v[0]), to_channel(v[1]), to_channel(v[2])};
}

inline YcbcrImage rgb_to_ycbcr(const RgbImage& img) {
  YcbcrImage out{img.width(), img.height(), {}, {}, {}};
  const std::size_t n = img.pixel_count();
  out.y.resize(n);
  out.cb.resize(n);
  out.cr.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Ycbcr c = rgb_to_ycbcr(img.pixels()[i]);
    out.y[i] = c.y;
    out.cb[i] = c.cb;
    out.cr[i] = c.cr;
  }
  return out;
}

inline RgbImage ycbcr_to_rgb(const YcbcrImage& img) {
  std::vector<Rgb> pixels(img.width * img.height);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = ycbcr_to_rgb(Ycbcr{img.y[i], img.cb[i], img.cr[i]});
  }
  return RgbImage(img.width, img.height, std::move(pixels));
}

/// Per-channel (r, g, b) maximum of |original - ycbcr_to_rgb(rgb_to_ycbcr(original))|.
inline std::array<int, 3> roundtrip_error(const RgbImage& img) {
  std::array<int, 3> worst{0, 0, 0};
  for (const Rgb& p : img.pixels()) {
    const Rgb q = ycbcr_to_rgb(rgb_to_ycbcr(p));
    worst[0] = std::max(worst[0], std::abs(int{p.r} - int{q.r}));
    worst[1] = std::max(worst[1], std::abs(int{p.g} - int{q.g}));
    worst[2] = std::max(worst[2], std::abs(int{p.b} - int{q.b}));
  }
  return worst;
}

/// Rebuilds RGB after an edit in YCbCr space by mapping only the change (after - before) through
/// the inverse matrix and adding it to `base`. Pixels whose planes did not change keep their bytes.
inline RgbImage apply_ycbcr_change(const RgbImage& base, const YcbcrImage& before, const YcbcrImage& after) {
  RgbImage out = base;
  for (std::size_t i = 0; i < out.pixel_count(); ++i) {
    const Ycbcr change{after.y[i] - before.y[i], after.cb[i] - before.cb[i], after.cr[i] - before.cr[i]};
    if (change.y == 0.0 && change.cb == 0.0 && change.cr == 0.0) continue;
    const auto d = ycbcr_to_rgb_linear(change);
    Rgb& p = out.pixels()[i];
    p = {to_channel(p.r + d[0]), to_channel(p.g + d[1]), to_channel(p.b + d[2])};
  }
  return out;
}

}  // namespace lumawm
