// Writes the synthetic 512x512 corpus and the 32x32 logo into a directory.
#include <filesystem>
#include <iostream>

#include "corpus.hpp"
#include "lumawm/cli.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : ".";
  try {
    std::filesystem::create_directories(dir);
    for (const auto& item : lumawm::testing::corpus()) {
      lumawm::cli::write_file_atomic((dir / (item.name + ".ppm")).string(), lumawm::write_rgb_image(item.image));
    }
    lumawm::cli::write_file_atomic((dir / "logo.pbm").string(), lumawm::write_watermark(lumawm::testing::logo()));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << "wrote corpus to " << dir.string() << "\n";
  return 0;
}
