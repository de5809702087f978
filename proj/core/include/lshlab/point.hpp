#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lshlab {

/// A point of the Hamming cube {0,1}^d, stored as packed 64-bit words.
///
/// Coordinate i lives in bit (i % 64) of word (i / 64). The textual form
/// writes coordinate 0 first, so "01011" has x_1 = x_3 = x_4 = 1. When the
/// point is read as a subset of [d], coordinate i set means i is a member.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim);

  /// Parses a 0/1 string; any other character is rejected.
  static Point from_string(std::string_view bits);
  /// Coordinate i is bit i of `index`. Requires dim <= 64.
  static Point from_index(std::uint64_t index, std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  bool bit(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value) noexcept;
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  std::uint64_t to_index() const;
  std::string to_string() const;
  std::size_t popcount() const noexcept;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Hamming distance; throws std::invalid_argument on dimension mismatch.
std::size_t hamming(const Point& a, const Point& b);

/// |A ∩ B| and |A ∪ B| for points read as subsets of [d].
std::size_t intersection_size(const Point& a, const Point& b);
std::size_t union_size(const Point& a, const Point& b);

/// 1 - |A∩B|/|A∪B|; two empty sets are at distance 0.
double jaccard_distance(const Point& a, const Point& b);

}  // namespace lshlab
