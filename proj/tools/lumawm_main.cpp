#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lumawm/cli.hpp"

namespace {

void add_params(CLI::App* cmd, lumawm::EmbedParams& params) {
  cmd->add_option("--alpha", params.alpha, "luminance offset per embedded pixel")->capture_default_str();
  cmd->add_option("--delta", params.delta, "log-average offset for black pixels")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace lumawm::cli;

  CLI::App app{"Log-average luminance watermarking for color images"};
  app.require_subcommand(1);

  EmbedOptions embed;
  auto* embed_cmd = app.add_subcommand("embed", "embed a 32x32 watermark into a P6 image");
  embed_cmd->add_option("original", embed.original, "original P6 image")->required();
  embed_cmd->add_option("watermark", embed.watermark, "32x32 P1/P4 watermark")->required();
  embed_cmd->add_option("output", embed.output, "watermarked P6 output")->required();
  add_params(embed_cmd, embed.params);
  embed_cmd->add_option("--dump-plan", embed.dump_plan, "write the selection plan to this path");

  ExtractOptions extract;
  auto* extract_cmd = app.add_subcommand("extract", "extract a watermark given the original image");
  extract_cmd->add_option("original", extract.original, "original P6 image")->required();
  extract_cmd->add_option("watermarked", extract.watermarked, "watermarked (possibly attacked) P6 image")
      ->required();
  extract_cmd->add_option("output", extract.output, "extracted P4 watermark")->required();
  add_params(extract_cmd, extract.params);
  extract_cmd->add_option("--reference", extract.reference, "embedded watermark, to report sigma");
  extract_cmd->add_option("--use-plan", extract.use_plan, "read the selection plan instead of recomputing it");
  extract_cmd->add_option("--dump-plan", extract.dump_plan, "write the selection plan to this path");

  AttackOptions attack;
  std::optional<std::string> crop_text;
  auto* attack_cmd = app.add_subcommand("attack", "apply one robustness attack");
  attack_cmd->add_option("input", attack.input, "input P6 image")->required();
  attack_cmd->add_option("output", attack.output, "attacked P6 output")->required();
  attack_cmd->add_option("--crop", crop_text, "keep rectangle X,Y,W,H and black out the rest");
  attack_cmd->add_flag("--grayscale", attack.grayscale, "replace each pixel by its rounded luminance");
  attack_cmd->add_option("--compress-quality", attack.compress_quality, "DCT quantization quality in (0,1]");

  MetricsOptions metrics;
  auto* metrics_cmd = app.add_subcommand("metrics", "PSNR between images and/or similarity between watermarks");
  metrics_cmd->add_option("--reference", metrics.reference_image, "reference P6 image");
  metrics_cmd->add_option("--test", metrics.test_image, "test P6 image");
  metrics_cmd->add_option("--reference-wm", metrics.reference_watermark, "embedded watermark");
  metrics_cmd->add_option("--extracted-wm", metrics.extracted_watermark, "extracted watermark");

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "run the robustness experiments and print CSV");
  report_cmd->add_option("original", report.original, "original P6 image")->required();
  report_cmd->add_option("watermark", report.watermark, "32x32 P1/P4 watermark")->required();
  add_params(report_cmd, report.params);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIoOrFormat;
  }

  if (*embed_cmd) return cmd_embed(embed, std::cout, std::cerr);
  if (*extract_cmd) return cmd_extract(extract, std::cout, std::cerr);
  if (*attack_cmd) {
    if (crop_text) {
      try {
        attack.crop = parse_rect(*crop_text);
      } catch (const lumawm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoOrFormat;
      }
    }
    return cmd_attack(attack, std::cout, std::cerr);
  }
  if (*metrics_cmd) return cmd_metrics(metrics, std::cout, std::cerr);
  return cmd_report(report, std::cout, std::cerr);
}
