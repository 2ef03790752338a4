#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "lumawm/colorspace.hpp"
#include "lumawm/error.hpp"
#include "lumawm/pixmap.hpp"

namespace lumawm {

inline constexpr double kMatchThreshold = 0.5;

struct MetricsReport {
  double psnr_db = std::numeric_limits<double>::infinity();
  double sigma = 0.0;
  bool matched = false;
};

/// PSNR over the luminance planes: 10 log10(255^2 N / sum (Y_ref - Y_test)^2).
/// Returns +infinity for identical luminance.
inline double psnr(const RgbImage& reference, const RgbImage& test) {
  if (!reference.same_size(test)) throw Error(ErrorKind::DimensionMismatch, "PSNR needs equal-sized images");
  double sse = 0.0;
  for (std::size_t i = 0; i < reference.pixel_count(); ++i) {
    const double d = luminance(reference.pixels()[i]) - luminance(test.pixels()[i]);
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(reference.pixel_count());
  return 10.0 * std::log10(255.0 * 255.0 * n / sse);
}

/// Fraction of the 1024 positions where the bitmaps agree.
inline double similarity(const WatermarkBitmap& reference, const WatermarkBitmap& extracted) {
  const std::size_t agree = WatermarkBitmap::kBits - (reference.bits() ^ extracted.bits()).count();
  return static_cast<double>(agree) / static_cast<double>(WatermarkBitmap::kBits);
}

/// Match iff sigma lies in (0.5, 1].
inline bool decide(double sigma) { return sigma > kMatchThreshold; }

inline MetricsReport make_report(double psnr_db, double sigma) { return {psnr_db, sigma, decide(sigma)}; }

/// Fixed three decimals; the infinite sentinel prints as "inf".
inline std::string format_fixed3(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

}  // namespace lumawm
