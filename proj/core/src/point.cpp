#include "lshlab/point.hpp"

#include <bit>
#include <stdexcept>

namespace lshlab {

namespace {

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
  }
}

}  // namespace

Point::Point(std::size_t dim) : dim_(dim), words_((dim + 63) / 64, 0) {}

Point Point::from_string(std::string_view bits) {
  Point p(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      p.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("point string must contain only '0' and '1'");
    }
  }
  return p;
}

Point Point::from_index(std::uint64_t index, std::size_t dim) {
  if (dim > 64) throw std::invalid_argument("from_index requires dim <= 64");
  Point p(dim);
  if (dim > 0) {
    const std::uint64_t mask = dim == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
    p.words_[0] = index & mask;
  }
  return p;
}

void Point::set(std::size_t i, bool value) noexcept {
  const std::uint64_t m = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= m;
  } else {
    words_[i >> 6] &= ~m;
  }
}

std::uint64_t Point::to_index() const {
  if (dim_ > 64) throw std::invalid_argument("to_index requires dim <= 64");
  return dim_ == 0 ? 0 : words_[0];
}

std::string Point::to_string() const {
  std::string s(dim_, '0');
  for (std::size_t i = 0; i < dim_; ++i) {
    if (bit(i)) s[i] = '1';
  }
  return s;
}

std::size_t Point::popcount() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t hamming(const Point& a, const Point& b) {
  require_same_dim(a, b);
  std::size_t n = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) n += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  return n;
}

std::size_t intersection_size(const Point& a, const Point& b) {
  require_same_dim(a, b);
  std::size_t n = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) n += static_cast<std::size_t>(std::popcount(wa[i] & wb[i]));
  return n;
}

std::size_t union_size(const Point& a, const Point& b) {
  require_same_dim(a, b);
  std::size_t n = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) n += static_cast<std::size_t>(std::popcount(wa[i] | wb[i]));
  return n;
}

double jaccard_distance(const Point& a, const Point& b) {
  const std::size_t u = union_size(a, b);
  if (u == 0) return 0.0;
  return 1.0 - static_cast<double>(intersection_size(a, b)) / static_cast<double>(u);
}

}  // namespace lshlab
