#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lumawm/attacks.hpp"
#include "lumawm/codec.hpp"
#include "lumawm/error.hpp"
#include "lumawm/metrics.hpp"
#include "lumawm/pixmap.hpp"
#include "lumawm/selection.hpp"

namespace lumawm::cli {

enum ExitCode : int {
  kOk = 0,
  kIoOrFormat = 1,
  kPipeline = 2,
};

struct EmbedOptions {
  std::string original;
  std::string watermark;
  std::string output;
  EmbedParams params;
  std::optional<std::string> dump_plan;
};

struct ExtractOptions {
  std::string original;
  std::string watermarked;
  std::string output;
  EmbedParams params;
  std::optional<std::string> reference;
  std::optional<std::string> use_plan;
  std::optional<std::string> dump_plan;
};

struct AttackOptions {
  std::string input;
  std::string output;
  std::optional<Rect> crop;
  bool grayscale = false;
  std::optional<double> compress_quality;
};

struct MetricsOptions {
  std::optional<std::string> reference_image;
  std::optional<std::string> test_image;
  std::optional<std::string> reference_watermark;
  std::optional<std::string> extracted_watermark;
};

struct ReportOptions {
  std::string original;
  std::string watermark;
  EmbedParams params;
};

/// Selection and geometry failures exit 2; I/O, file-format and flag errors exit 1.
inline int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ImageTooSmall:
    case ErrorKind::InsufficientCandidates:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::RectOutOfBounds:
      return kPipeline;
    default:
      return kIoOrFormat;
  }
}

/// Writes next to the target and renames on success, so failures never leave partial files.
inline void write_file_atomic(const std::string& path, std::string_view content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot rename onto " + path);
  }
}

/// "X,Y,W,H" with non-negative integers.
inline Rect parse_rect(std::string_view text) {
  std::size_t fields[4]{};
  for (int i = 0; i < 4; ++i) {
    const std::size_t comma = text.find(',');
    const std::string_view part = i < 3 ? text.substr(0, comma) : text;
    if ((i < 3 && comma == std::string_view::npos) || part.empty()) {
      throw Error(ErrorKind::InvalidParameter, "crop must be X,Y,W,H");
    }
    fields[i] = lumawm::detail::plan_uint(part);
    if (i < 3) text.remove_prefix(comma + 1);
  }
  return {fields[0], fields[1], fields[2], fields[3]};
}

namespace detail {

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoOrFormat;
  }
}

inline void warn_on_small_alpha(const EmbedParams& params, std::ostream& err) {
  if (params.alpha < kMinReliableAlpha) {
    err << "warning: alpha " << params.alpha << " is below " << kMinReliableAlpha
        << "; rounding may flip extracted bits\n";
  }
}

inline void print_plan_summary(const SelectionPlan& plan, std::ostream& out) {
  out << "grid=" << plan.grid.cols << "x" << plan.grid.rows << "\n";
  out << "image_log_avg=" << format_fixed3(plan.image_log_avg) << "\n";
  out << "blocks=";
  for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
    out << (i ? " " : "") << plan.blocks[i].col << "," << plan.blocks[i].row;
  }
  out << "\n";
}

}  // namespace detail

inline int cmd_embed(const EmbedOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    opt.params.validate();
    detail::warn_on_small_alpha(opt.params, err);
    const RgbImage original = load_rgb_image(opt.original);
    const WatermarkBitmap wm = load_watermark(opt.watermark);
    const SelectionPlan plan = select_blocks(rgb_to_ycbcr(original), opt.params.delta);
    const RgbImage marked = embed_with_plan(original, wm, plan, opt.params.alpha);
    write_file_atomic(opt.output, write_rgb_image(marked));
    if (opt.dump_plan) write_file_atomic(*opt.dump_plan, serialize_plan(plan));
    out << "psnr_db=" << format_fixed3(psnr(original, marked)) << "\n";
    detail::print_plan_summary(plan, out);
    return static_cast<int>(kOk);
  });
}

inline int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    opt.params.validate();
    const RgbImage original = load_rgb_image(opt.original);
    const RgbImage marked = load_rgb_image(opt.watermarked);
    std::optional<WatermarkBitmap> reference;
    if (opt.reference) reference = load_watermark(*opt.reference);
    if (!original.same_size(marked)) {
      throw Error(ErrorKind::DimensionMismatch, "original and watermarked images differ in size");
    }
    const SelectionPlan plan = opt.use_plan ? parse_plan(read_file(*opt.use_plan))
                                            : select_blocks(rgb_to_ycbcr(original), opt.params.delta);
    const WatermarkBitmap extracted = extract_with_plan(original, marked, plan);
    write_file_atomic(opt.output, write_watermark(extracted));
    if (opt.dump_plan) write_file_atomic(*opt.dump_plan, serialize_plan(plan));
    if (reference) {
      const double sigma = similarity(*reference, extracted);
      out << "sigma=" << format_fixed3(sigma) << "\n";
      out << "matched=" << (decide(sigma) ? "true" : "false") << "\n";
    }
    return static_cast<int>(kOk);
  });
}

inline int cmd_attack(const AttackOptions& opt, std::ostream&, std::ostream& err) {
  return detail::guarded(err, [&] {
    const int chosen = (opt.crop ? 1 : 0) + (opt.grayscale ? 1 : 0) + (opt.compress_quality ? 1 : 0);
    if (chosen != 1) {
      throw Error(ErrorKind::InvalidParameter,
                  "exactly one of --crop, --grayscale, --compress-quality is required");
    }
    AttackSpec spec = GrayscaleAttack{};
    if (opt.crop) spec = CropAttack{*opt.crop};
    if (opt.compress_quality) spec = CompressAttack{*opt.compress_quality};
    const RgbImage input = load_rgb_image(opt.input);
    write_file_atomic(opt.output, write_rgb_image(apply_attack(input, spec)));
    return static_cast<int>(kOk);
  });
}

inline int cmd_metrics(const MetricsOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const bool images = opt.reference_image || opt.test_image;
    const bool marks = opt.reference_watermark || opt.extracted_watermark;
    if (images && !(opt.reference_image && opt.test_image)) {
      throw Error(ErrorKind::InvalidParameter, "PSNR needs both --reference and --test");
    }
    if (marks && !(opt.reference_watermark && opt.extracted_watermark)) {
      throw Error(ErrorKind::InvalidParameter, "similarity needs both --reference-wm and --extracted-wm");
    }
    if (!images && !marks) throw Error(ErrorKind::InvalidParameter, "nothing to measure");
    if (images) {
      out << "psnr_db=" << format_fixed3(psnr(load_rgb_image(*opt.reference_image), load_rgb_image(*opt.test_image)))
          << "\n";
    }
    if (marks) {
      const double sigma =
          similarity(load_watermark(*opt.reference_watermark), load_watermark(*opt.extracted_watermark));
      out << "sigma=" << format_fixed3(sigma) << "\n";
      out << "matched=" << (decide(sigma) ? "true" : "false") << "\n";
    }
    return static_cast<int>(kOk);
  });
}

struct ReportRow {
  std::string test;
  std::optional<double> psnr_db;
  double sigma = 0.0;
  bool matched = false;
};

inline constexpr double kReportCompressQuality = 0.75;

/// Runs the no-change, crop, compression and grayscale experiments on one image.
inline std::vector<ReportRow> run_report(const RgbImage& original, const WatermarkBitmap& wm,
                                         const EmbedParams& params) {
  params.validate();
  const SelectionPlan plan = select_blocks(rgb_to_ycbcr(original), params.delta);
  const RgbImage marked = embed_with_plan(original, wm, plan, params.alpha);

  std::vector<ReportRow> rows;
  const auto add = [&](std::string name, const RgbImage& attacked, bool with_psnr) {
    const double sigma = similarity(wm, extract_with_plan(original, attacked, plan));
    rows.push_back({std::move(name), with_psnr ? std::optional(psnr(original, attacked)) : std::nullopt, sigma,
                    decide(sigma)});
  };
  add("no-change", marked, true);
  add("crop", crop_attack(marked, center_half_rect(marked.width(), marked.height())), true);
  add("compress-0.75", compress_attack(marked, kReportCompressQuality), true);
  add("grayscale", grayscale_attack(marked), false);
  return rows;
}

inline std::string format_report_csv(const std::vector<ReportRow>& rows) {
  std::string csv = "test,psnr_db,sigma,matched\n";
  for (const ReportRow& r : rows) {
    csv += r.test + "," + (r.psnr_db ? format_fixed3(*r.psnr_db) : "") + "," + format_fixed3(r.sigma) + "," +
           (r.matched ? "true" : "false") + "\n";
  }
  return csv;
}

inline int cmd_report(const ReportOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    detail::warn_on_small_alpha(opt.params, err);
    const RgbImage original = load_rgb_image(opt.original);
    const WatermarkBitmap wm = load_watermark(opt.watermark);
    out << format_report_csv(run_report(original, wm, opt.params));
    return static_cast<int>(kOk);
  });
}

}  // namespace lumawm::cli
