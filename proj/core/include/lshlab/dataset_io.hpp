#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "lshlab/point.hpp"

namespace lshlab {

/// Text datasets hold one 0/1 string per line; blank lines and lines
/// starting with '#' are skipped. All points must share one dimension.
std::vector<Point> read_text_dataset(std::istream& in);
void write_text_dataset(std::ostream& out, const std::vector<Point>& points);

/// Binary datasets: "LSHLABDS", u32 version (1), u64 n, u64 d, then n
/// records of ceil(d/8) bytes. Coordinate i is bit (i % 8) of byte i / 8.
/// Integers are little-endian.
std::vector<Point> read_binary_dataset(std::istream& in);
void write_binary_dataset(std::ostream& out, const std::vector<Point>& points);

/// Picks the format from the leading magic bytes.
std::vector<Point> read_dataset(const std::filesystem::path& path);
void write_dataset(const std::filesystem::path& path, const std::vector<Point>& points, bool binary);

}  // namespace lshlab
