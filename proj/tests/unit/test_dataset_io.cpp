#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "lshlab/ann_index.hpp"
#include "lshlab/dataset_io.hpp"

using namespace lshlab;

TEST(DatasetIo, TextRoundTrip) {
  std::istringstream in("# header\n0101\n\n1111\r\n0000\n");
  const auto pts = read_text_dataset(in);
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[0].to_string(), "0101");
  std::ostringstream out;
  write_text_dataset(out, pts);
  EXPECT_EQ(out.str(), "0101\n1111\n0000\n");
}

TEST(DatasetIo, TextErrors) {
  std::istringstream mixed("010\n0101\n");
  EXPECT_THROW(read_text_dataset(mixed), std::invalid_argument);
  std::istringstream bad("01x\n");
  EXPECT_THROW(read_text_dataset(bad), std::invalid_argument);
}

TEST(DatasetIo, BinaryLayout) {
  std::ostringstream out;
  write_binary_dataset(out, {Point::from_string("1000000001")});
  const std::string b = out.str();
  ASSERT_EQ(b.size(), 8u + 4 + 8 + 8 + 2);
  EXPECT_EQ(b.substr(0, 8), "LSHLABDS");
  EXPECT_EQ(static_cast<unsigned char>(b[28]), 0x01);
  EXPECT_EQ(static_cast<unsigned char>(b[29]), 0x02);
}

TEST(DatasetIo, BinaryRoundTripWide) {
  const auto pts = random_points(17, 131, 3);
  std::ostringstream out;
  write_binary_dataset(out, pts);
  std::istringstream in(out.str());
  EXPECT_EQ(read_binary_dataset(in), pts);
}

TEST(DatasetIo, FilesAutodetect) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto pts = random_points(5, 20, 1);
  for (bool binary : {false, true}) {
    const auto path = dir / (binary ? "lshlab_ds.bin" : "lshlab_ds.txt");
    write_dataset(path, pts, binary);
    EXPECT_EQ(read_dataset(path), pts);
    std::filesystem::remove(path);
  }
  EXPECT_THROW(read_dataset(dir / "lshlab_missing_dataset"), std::runtime_error);
}
