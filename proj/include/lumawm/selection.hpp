#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lumawm/colorspace.hpp"
#include "lumawm/error.hpp"

namespace lumawm {

inline constexpr std::size_t kBlockSize = 8;
inline constexpr std::size_t kPlanBlocks = 16;
inline constexpr std::size_t kPixelsPerBlock = kBlockSize * kBlockSize;
inline constexpr double kDefaultDelta = 0.0001;

// Relative slack under which a block average counts as equal to the image average. Summation
// order differs between a block and the whole image, so exact ties may land a few ulps apart.
inline constexpr double kTieTolerance = 1e-12;

struct BlockRef {
  std::size_t col = 0;
  std::size_t row = 0;

  friend auto operator<=>(const BlockRef&, const BlockRef&) = default;
};

struct GridDims {
  std::size_t cols = 0;
  std::size_t rows = 0;

  std::size_t cells() const noexcept { return cols * rows; }
  bool contains(const BlockRef& b) const noexcept { return b.col < cols && b.row < rows; }
  friend bool operator==(const GridDims&, const GridDims&) = default;
};

struct SelectionPlan {
  std::vector<BlockRef> blocks;
  std::size_t block_size = kBlockSize;
  GridDims grid;
  double image_log_avg = 0.0;
  double delta = kDefaultDelta;

  friend bool operator==(const SelectionPlan&, const SelectionPlan&) = default;
};

/// exp(sum(log(delta + y)) / n). Uses compensated summation.
inline double log_average_luminance(std::span<const double> samples, double delta) {
  if (samples.empty()) throw Error(ErrorKind::EmptyRegion, "log-average of an empty region");
  if (!(delta > 0.0)) throw Error(ErrorKind::InvalidParameter, "delta must be positive");
  double sum = 0.0;
  double carry = 0.0;
  for (const double y : samples) {
    const double term = std::log(delta + y);
    const double t = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return std::exp((sum + carry) / static_cast<double>(samples.size()));
}

inline GridDims partition_grid(std::size_t width, std::size_t height) {
  if (width < kBlockSize || height < kBlockSize) {
    throw Error(ErrorKind::ImageTooSmall,
                std::to_string(width) + "x" + std::to_string(height) + " holds no 8x8 block");
  }
  return {width / kBlockSize, height / kBlockSize};
}

/// Top-left pixel coordinate of a block.
inline std::array<std::size_t, 2> block_origin(const BlockRef& b) noexcept {
  return {b.col * kBlockSize, b.row * kBlockSize};
}

inline std::array<double, kPixelsPerBlock> block_luminance(const YcbcrImage& img, const BlockRef& b) {
  std::array<double, kPixelsPerBlock> out{};
  const auto [x0, y0] = block_origin(b);
  for (std::size_t dy = 0; dy < kBlockSize; ++dy) {
    for (std::size_t dx = 0; dx < kBlockSize; ++dx) {
      out[dy * kBlockSize + dx] = img.y[img.index(x0 + dx, y0 + dy)];
    }
  }
  return out;
}

inline double block_log_average(const YcbcrImage& img, const BlockRef& b, double delta) {
  const auto samples = block_luminance(img, b);
  return log_average_luminance(samples, delta);
}

/// Greater-or-equal test between a block and the whole image, ties included.
inline bool meets_image_average(double block_avg, double image_avg) noexcept {
  return block_avg >= image_avg * (1.0 - kTieTolerance);
}

/// Every block whose log-average is at least the whole-image log-average, in row-major grid order.
/// Remainder pixels outside the grid still count toward the whole-image value.
inline std::vector<BlockRef> candidate_blocks(const YcbcrImage& img, double delta) {
  const GridDims grid = partition_grid(img.width, img.height);
  const double image_avg = log_average_luminance(img.y, delta);
  std::vector<BlockRef> out;
  for (std::size_t row = 0; row < grid.rows; ++row) {
    for (std::size_t col = 0; col < grid.cols; ++col) {
      const BlockRef b{col, row};
      if (meets_image_average(block_log_average(img, b, delta), image_avg)) out.push_back(b);
    }
  }
  return out;
}

/// Square spiral from (cols/2, rows/2): right, down, left, up with run lengths 1,1,2,2,3,3,...
/// Off-grid positions are skipped; every grid cell is emitted exactly once.
inline std::vector<BlockRef> spiral_order(GridDims grid) {
  std::vector<BlockRef> out;
  if (grid.cols == 0 || grid.rows == 0) return out;
  out.reserve(grid.cells());

  constexpr std::array<std::array<long, 2>, 4> steps{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
  long x = static_cast<long>(grid.cols / 2);
  long y = static_cast<long>(grid.rows / 2);
  const auto emit = [&] {
    if (x >= 0 && y >= 0 && static_cast<std::size_t>(x) < grid.cols && static_cast<std::size_t>(y) < grid.rows) {
      out.push_back({static_cast<std::size_t>(x), static_cast<std::size_t>(y)});
    }
  };

  emit();
  for (long run = 1, dir = 0; out.size() < grid.cells(); ++dir) {
    for (long i = 0; i < run; ++i) {
      x += steps[dir % 4][0];
      y += steps[dir % 4][1];
      emit();
    }
    if (dir % 2 == 1) ++run;
  }
  return out;
}

/// Walks the spiral, keeping candidates until 16 are found.
inline SelectionPlan select_blocks(const YcbcrImage& img, double delta = kDefaultDelta) {
  const GridDims grid = partition_grid(img.width, img.height);
  const double image_avg = log_average_luminance(img.y, delta);

  SelectionPlan plan;
  plan.grid = grid;
  plan.image_log_avg = image_avg;
  plan.delta = delta;
  for (const BlockRef& b : spiral_order(grid)) {
    if (meets_image_average(block_log_average(img, b, delta), image_avg)) {
      plan.blocks.push_back(b);
      if (plan.blocks.size() == kPlanBlocks) return plan;
    }
  }
  throw Error(ErrorKind::InsufficientCandidates, "only " + std::to_string(plan.blocks.size()) +
                                                     " candidate blocks, need " + std::to_string(kPlanBlocks));
}

/// Text form:
///   block_size 8
///   grid <cols> <rows>
///   delta <value>
///   image_log_avg <value>
/// followed by one "col,row" line per block. Reals use 17 significant digits.
inline std::string serialize_plan(const SelectionPlan& plan) {
  char real[64];
  std::string out = "block_size " + std::to_string(plan.block_size) + "\n";
  out += "grid " + std::to_string(plan.grid.cols) + " " + std::to_string(plan.grid.rows) + "\n";
  std::snprintf(real, sizeof real, "%.17g", plan.delta);
  out += "delta " + std::string(real) + "\n";
  std::snprintf(real, sizeof real, "%.17g", plan.image_log_avg);
  out += "image_log_avg " + std::string(real) + "\n";
  for (const BlockRef& b : plan.blocks) {
    out += std::to_string(b.col) + "," + std::to_string(b.row) + "\n";
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> plan_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

inline std::size_t plan_uint(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::MalformedPlan, "bad integer '" + std::string(s) + "'");
  }
  return v;
}

inline double plan_real(std::string_view s) {
  const std::string copy(s);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw Error(ErrorKind::MalformedPlan, "bad real '" + copy + "'");
  }
  return v;
}

inline std::string_view plan_field(std::string_view line, std::string_view key) {
  if (line.size() <= key.size() || line.substr(0, key.size()) != key || line[key.size()] != ' ') {
    throw Error(ErrorKind::MalformedPlan, "expected '" + std::string(key) + "' line");
  }
  return line.substr(key.size() + 1);
}

}  // namespace detail

/// Parses serialize_plan output and re-checks the plan's structural invariants.
inline SelectionPlan parse_plan(std::string_view text) {
  const auto lines = detail::plan_lines(text);
  if (lines.size() != 4 + kPlanBlocks) {
    throw Error(ErrorKind::MalformedPlan, "expected 4 header lines and 16 blocks");
  }
  SelectionPlan plan;
  plan.block_size = detail::plan_uint(detail::plan_field(lines[0], "block_size"));
  if (plan.block_size != kBlockSize) throw Error(ErrorKind::MalformedPlan, "block_size must be 8");

  const std::string_view grid = detail::plan_field(lines[1], "grid");
  const std::size_t sp = grid.find(' ');
  if (sp == std::string_view::npos) throw Error(ErrorKind::MalformedPlan, "grid needs two values");
  plan.grid = {detail::plan_uint(grid.substr(0, sp)), detail::plan_uint(grid.substr(sp + 1))};
  plan.delta = detail::plan_real(detail::plan_field(lines[2], "delta"));
  plan.image_log_avg = detail::plan_real(detail::plan_field(lines[3], "image_log_avg"));

  for (std::size_t i = 4; i < lines.size(); ++i) {
    const std::size_t comma = lines[i].find(',');
    if (comma == std::string_view::npos) throw Error(ErrorKind::MalformedPlan, "block line needs col,row");
    const BlockRef b{detail::plan_uint(lines[i].substr(0, comma)), detail::plan_uint(lines[i].substr(comma + 1))};
    if (!plan.grid.contains(b)) throw Error(ErrorKind::MalformedPlan, "block outside grid");
    for (const BlockRef& seen : plan.blocks) {
      if (seen == b) throw Error(ErrorKind::MalformedPlan, "duplicate block");
    }
    plan.blocks.push_back(b);
  }
  return plan;
}

}  // namespace lumawm
