#pragma once

#include <array>
#include <cstddef>

#include "lumawm/colorspace.hpp"
#include "lumawm/error.hpp"
#include "lumawm/pixmap.hpp"
#include "lumawm/selection.hpp"

namespace lumawm {

struct EmbedParams {
  int alpha = 3;
  double delta = kDefaultDelta;

  void validate() const {
    if (alpha < 1) throw Error(ErrorKind::InvalidParameter, "alpha must be at least 1");
    if (!(delta > 0.0)) throw Error(ErrorKind::InvalidParameter, "delta must be positive");
  }
};

// Below this, reconstruction rounding can flip the sign of an embedded difference.
inline constexpr int kMinReliableAlpha = 2;

/// Pixel carrying watermark bit `index` (row-major over 32x32): block plan.blocks[index / 64],
/// row-major position index % 64 inside that block. Returns (x, y).
inline std::array<std::size_t, 2> bit_position(const SelectionPlan& plan, std::size_t index) {
  const BlockRef& block = plan.blocks.at(index / kPixelsPerBlock);
  const std::size_t within = index % kPixelsPerBlock;
  const auto [x0, y0] = block_origin(block);
  return {x0 + within % kBlockSize, y0 + within / kBlockSize};
}

namespace detail {

inline void check_plan_fits(const SelectionPlan& plan, std::size_t width, std::size_t height) {
  if (plan.blocks.size() != kPlanBlocks) throw Error(ErrorKind::MalformedPlan, "plan must hold 16 blocks");
  const GridDims grid = partition_grid(width, height);
  if (!(plan.grid == grid)) throw Error(ErrorKind::DimensionMismatch, "plan grid does not match image");
}

}  // namespace detail

/// Adds +alpha (white) or -alpha (black) to the Y sample of each carrier pixel, in place.
inline void embed_luminance(YcbcrImage& planes, const SelectionPlan& plan, const WatermarkBitmap& wm, int alpha) {
  for (std::size_t i = 0; i < WatermarkBitmap::kBits; ++i) {
    const auto [x, y] = bit_position(plan, i);
    planes.y[planes.index(x, y)] += wm.bit(i) ? alpha : -alpha;
  }
}

inline RgbImage embed_with_plan(const RgbImage& original, const WatermarkBitmap& wm, const SelectionPlan& plan,
                                int alpha) {
  if (alpha < 1) throw Error(ErrorKind::InvalidParameter, "alpha must be at least 1");
  detail::check_plan_fits(plan, original.width(), original.height());
  const YcbcrImage before = rgb_to_ycbcr(original);
  YcbcrImage after = before;
  embed_luminance(after, plan, wm, alpha);
  return apply_ycbcr_change(original, before, after);
}

/// Embeds into the 16 blocks selected from the original's luminance.
inline RgbImage embed(const RgbImage& original, const WatermarkBitmap& wm, const EmbedParams& params = {}) {
  params.validate();
  const SelectionPlan plan = select_blocks(rgb_to_ycbcr(original), params.delta);
  return embed_with_plan(original, wm, plan, params.alpha);
}

/// Sign test per carrier pixel: white when Y(watermarked) - Y(original) >= 0.
inline WatermarkBitmap extract_with_plan(const RgbImage& original, const RgbImage& watermarked,
                                         const SelectionPlan& plan) {
  if (!original.same_size(watermarked)) {
    throw Error(ErrorKind::DimensionMismatch, "original and watermarked images differ in size");
  }
  detail::check_plan_fits(plan, original.width(), original.height());
  WatermarkBitmap out;
  for (std::size_t i = 0; i < WatermarkBitmap::kBits; ++i) {
    const auto [x, y] = bit_position(plan, i);
    const double diff = luminance(watermarked.at(x, y)) - luminance(original.at(x, y));
    out.set_bit(i, diff >= 0.0);
  }
  return out;
}

/// Non-blind extraction. The plan is recomputed from the original image.
inline WatermarkBitmap extract(const RgbImage& original, const RgbImage& watermarked,
                               const EmbedParams& params = {}) {
  params.validate();
  if (!original.same_size(watermarked)) {
    throw Error(ErrorKind::DimensionMismatch, "original and watermarked images differ in size");
  }
  const SelectionPlan plan = select_blocks(rgb_to_ycbcr(original), params.delta);
  return extract_with_plan(original, watermarked, plan);
}

}  // namespace lumawm
