#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "corpus.hpp"
#include "lumawm/cli.hpp"

namespace lumawm::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("lumawm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write_file_atomic(path("orig.ppm"), write_rgb_image(lumawm::testing::portrait_like()));
    write_file_atomic(path("logo.pbm"), write_watermark(lumawm::testing::logo()));
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  EmbedOptions embed_opts() const { return {path("orig.ppm"), path("logo.pbm"), path("marked.ppm"), {}, {}}; }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, EmbedPrintsPsnrAndPlan) {
  EmbedOptions opt = embed_opts();
  opt.dump_plan = path("plan.txt");
  ASSERT_EQ(cmd_embed(opt, out_, err_), kOk) << err_.str();
  EXPECT_EQ(out_.str().substr(0, 16), "psnr_db=62.671\ng");
  EXPECT_NE(out_.str().find("blocks="), std::string::npos);
  EXPECT_EQ(load_rgb_image(path("marked.ppm")), embed(load_rgb_image(path("orig.ppm")), lumawm::testing::logo()));
  EXPECT_EQ(parse_plan(read_file(path("plan.txt"))),
            select_blocks(rgb_to_ycbcr(load_rgb_image(path("orig.ppm")))));
}

TEST_F(CliTest, EmbedTooFewBlocksExitsTwo) {
  write_file_atomic(path("tiny.ppm"), write_rgb_image(RgbImage(16, 16, Rgb{80, 90, 100})));
  EmbedOptions opt = embed_opts();
  opt.original = path("tiny.ppm");
  EXPECT_EQ(cmd_embed(opt, out_, err_), kPipeline);
  EXPECT_NE(err_.str().find("InsufficientCandidates"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("marked.ppm")));
}

TEST_F(CliTest, MissingInputExitsOne) {
  EmbedOptions opt = embed_opts();
  opt.original = path("absent.ppm");
  EXPECT_EQ(cmd_embed(opt, out_, err_), kIoOrFormat);
  EXPECT_FALSE(fs::exists(path("marked.ppm")));
}

TEST_F(CliTest, ExtractReportsSimilarity) {
  ASSERT_EQ(cmd_embed(embed_opts(), out_, err_), kOk);
  ExtractOptions opt{path("orig.ppm"), path("marked.ppm"), path("out.pbm"), {}, path("logo.pbm"), {}, {}};
  std::ostringstream out;
  ASSERT_EQ(cmd_extract(opt, out, err_), kOk) << err_.str();
  EXPECT_EQ(out.str(), "sigma=1.000\nmatched=true\n");
  EXPECT_EQ(load_watermark(path("out.pbm")), lumawm::testing::logo());
}

TEST_F(CliTest, ExtractSelfIsAllWhite) {
  ExtractOptions opt{path("orig.ppm"), path("orig.ppm"), path("out.pbm"), {}, {}, {}, {}};
  ASSERT_EQ(cmd_extract(opt, out_, err_), kOk);
  EXPECT_EQ(read_file(path("out.pbm")), "P4\n32 32\n" + std::string(128, '\0'));
}

TEST_F(CliTest, ExtractDimensionMismatchExitsTwo) {
  write_file_atomic(path("small.ppm"), write_rgb_image(RgbImage(256, 256)));
  ExtractOptions opt{path("orig.ppm"), path("small.ppm"), path("out.pbm"), {}, {}, {}, {}};
  EXPECT_EQ(cmd_extract(opt, out_, err_), kPipeline);
  EXPECT_FALSE(fs::exists(path("out.pbm")));
}

TEST_F(CliTest, ExtractWithStoredPlan) {
  EmbedOptions embed = embed_opts();
  embed.dump_plan = path("plan.txt");
  ASSERT_EQ(cmd_embed(embed, out_, err_), kOk);
  ExtractOptions opt{path("orig.ppm"), path("marked.ppm"), path("out.pbm"), {}, path("logo.pbm"), path("plan.txt"), {}};
  std::ostringstream out;
  ASSERT_EQ(cmd_extract(opt, out, err_), kOk) << err_.str();
  EXPECT_EQ(out.str(), "sigma=1.000\nmatched=true\n");

  write_file_atomic(path("bad_plan.txt"), "block_size 8\n");
  opt.use_plan = path("bad_plan.txt");
  EXPECT_EQ(cmd_extract(opt, out, err_), kIoOrFormat);
}

TEST_F(CliTest, AttackFlags) {
  write_file_atomic(path("gray.ppm"), write_rgb_image(RgbImage(64, 64, Rgb{90, 90, 90})));
  AttackOptions gray{path("gray.ppm"), path("gray_out.ppm"), {}, true, {}};
  ASSERT_EQ(cmd_attack(gray, out_, err_), kOk);
  EXPECT_EQ(read_file(path("gray_out.ppm")), read_file(path("gray.ppm")));

  AttackOptions crop{path("orig.ppm"), path("crop_out.ppm"), parse_rect("0,0,512,512"), false, {}};
  ASSERT_EQ(cmd_attack(crop, out_, err_), kOk);
  EXPECT_EQ(read_file(path("crop_out.ppm")), read_file(path("orig.ppm")));

  AttackOptions compress{path("orig.ppm"), path("jpeg_out.ppm"), {}, false, 0.75};
  ASSERT_EQ(cmd_attack(compress, out_, err_), kOk);
  const double db = psnr(load_rgb_image(path("orig.ppm")), load_rgb_image(path("jpeg_out.ppm")));
  EXPECT_TRUE(std::isfinite(db));

  AttackOptions none{path("orig.ppm"), path("x.ppm"), {}, false, {}};
  EXPECT_EQ(cmd_attack(none, out_, err_), kIoOrFormat);
  AttackOptions two{path("orig.ppm"), path("x.ppm"), {}, true, 0.5};
  EXPECT_EQ(cmd_attack(two, out_, err_), kIoOrFormat);
  AttackOptions outside{path("orig.ppm"), path("x.ppm"), parse_rect("500,0,100,10"), false, {}};
  EXPECT_EQ(cmd_attack(outside, out_, err_), kPipeline);
  EXPECT_FALSE(fs::exists(path("x.ppm")));
}

TEST_F(CliTest, ParseRect) {
  const Rect r = parse_rect("1,2,30,40");
  EXPECT_EQ(r.x, 1u);
  EXPECT_EQ(r.y, 2u);
  EXPECT_EQ(r.width, 30u);
  EXPECT_EQ(r.height, 40u);
  EXPECT_THROW(parse_rect("1,2,3"), Error);
  EXPECT_THROW(parse_rect("1,2,3,x"), Error);
  EXPECT_THROW(parse_rect("1,,3,4"), Error);
}

TEST_F(CliTest, Metrics) {
  ASSERT_EQ(cmd_embed(embed_opts(), out_, err_), kOk);
  MetricsOptions opt{path("orig.ppm"), path("marked.ppm"), path("logo.pbm"), path("logo.pbm")};
  std::ostringstream out;
  ASSERT_EQ(cmd_metrics(opt, out, err_), kOk);
  EXPECT_EQ(out.str(), "psnr_db=62.671\nsigma=1.000\nmatched=true\n");

  MetricsOptions self{path("orig.ppm"), path("orig.ppm"), {}, {}};
  std::ostringstream inf;
  ASSERT_EQ(cmd_metrics(self, inf, err_), kOk);
  EXPECT_EQ(inf.str(), "psnr_db=inf\n");

  EXPECT_EQ(cmd_metrics(MetricsOptions{path("orig.ppm"), {}, {}, {}}, out, err_), kIoOrFormat);
  EXPECT_EQ(cmd_metrics(MetricsOptions{}, out, err_), kIoOrFormat);
}

TEST_F(CliTest, ReportCsv) {
  ReportOptions opt{path("orig.ppm"), path("logo.pbm"), {}};
  std::ostringstream first, second;
  ASSERT_EQ(cmd_report(opt, first, err_), kOk) << err_.str();
  ASSERT_EQ(cmd_report(opt, second, err_), kOk);
  EXPECT_EQ(first.str(), second.str());

  std::istringstream lines(first.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "test,psnr_db,sigma,matched");
  std::getline(lines, line);
  EXPECT_EQ(line, "no-change,62.671,1.000,true");
  std::getline(lines, line);
  EXPECT_EQ(line.substr(0, 5), "crop,");
  EXPECT_EQ(line.substr(line.size() - 11), ",1.000,true");
  std::getline(lines, line);
  EXPECT_EQ(line.substr(0, 14), "compress-0.75,");
  EXPECT_EQ(line.substr(line.size() - 5), ",true");
  std::getline(lines, line);
  EXPECT_EQ(line, "grayscale,,1.000,true");
}

TEST_F(CliTest, SmallAlphaWarns) {
  EmbedOptions opt = embed_opts();
  opt.params.alpha = 1;
  ASSERT_EQ(cmd_embed(opt, out_, err_), kOk);
  EXPECT_NE(err_.str().find("warning"), std::string::npos);
  opt.params.alpha = 0;
  EXPECT_EQ(cmd_embed(opt, out_, err_), kIoOrFormat);
}

// End-to-end through the built executable.
int run(const std::string& args) {
  const std::string command = std::string(LUMAWM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(CliTest, BinaryExitCodes) {
  EXPECT_EQ(run("embed " + path("orig.ppm") + " " + path("logo.pbm") + " " + path("m.ppm") + " --alpha 3"), 0);
  EXPECT_EQ(run("extract " + path("orig.ppm") + " " + path("m.ppm") + " " + path("e.pbm") + " --reference " +
                path("logo.pbm")),
            0);
  EXPECT_EQ(load_watermark(path("e.pbm")), lumawm::testing::logo());
  EXPECT_EQ(run("attack " + path("m.ppm") + " " + path("c.ppm") + " --crop 128,128,256,256"), 0);
  EXPECT_EQ(run("attack " + path("m.ppm") + " " + path("g.ppm") + " --grayscale"), 0);
  EXPECT_EQ(run("attack " + path("m.ppm") + " " + path("q.ppm") + " --compress-quality 0.75"), 0);
  EXPECT_EQ(run("metrics --reference " + path("orig.ppm") + " --test " + path("q.ppm")), 0);
  EXPECT_EQ(run("report " + path("orig.ppm") + " " + path("logo.pbm")), 0);
  EXPECT_EQ(run("embed " + path("nope.ppm") + " " + path("logo.pbm") + " " + path("m2.ppm")), 1);
  EXPECT_EQ(run("attack " + path("m.ppm") + " " + path("c2.ppm") + " --crop 1,2"), 1);
  EXPECT_EQ(run("frobnicate"), 1);

  write_file_atomic(path("tiny.ppm"), write_rgb_image(RgbImage(16, 16, Rgb{80, 90, 100})));
  EXPECT_EQ(run("embed " + path("tiny.ppm") + " " + path("logo.pbm") + " " + path("m3.ppm")), 2);
  EXPECT_FALSE(fs::exists(path("m3.ppm")));
}

}  // namespace
}  // namespace lumawm::cli
