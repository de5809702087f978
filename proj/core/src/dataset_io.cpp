#include "lshlab/dataset_io.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lshlab/byte_io.hpp"

namespace lshlab {

namespace {

constexpr char kMagic[8] = {'L', 'S', 'H', 'L', 'A', 'B', 'D', 'S'};
constexpr std::uint32_t kVersion = 1;

void check_dims(const std::vector<Point>& points) {
  for (const auto& p : points) {
    if (p.dim() != points.front().dim()) throw std::invalid_argument("dataset points have mixed dimensions");
  }
}

}  // namespace

std::vector<Point> read_text_dataset(std::istream& in) {
  std::vector<Point> points;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    try {
      points.push_back(Point::from_string(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("dataset line " + std::to_string(lineno) + ": " + e.what());
    }
    if (points.back().dim() != points.front().dim()) {
      throw std::invalid_argument("dataset line " + std::to_string(lineno) + ": dimension mismatch");
    }
  }
  return points;
}

void write_text_dataset(std::ostream& out, const std::vector<Point>& points) {
  check_dims(points);
  for (const auto& p : points) out << p.to_string() << '\n';
}

std::vector<Point> read_binary_dataset(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw std::runtime_error("not a binary dataset");
  }
  if (detail::get_le<std::uint32_t>(in) != kVersion) throw std::runtime_error("unsupported dataset version");
  const auto n = detail::get_le<std::uint64_t>(in);
  const auto d = detail::get_le<std::uint64_t>(in);
  if (d == 0 || d > (std::uint64_t{1} << 24) || n > (std::uint64_t{1} << 32)) {
    throw std::runtime_error("dataset header out of range");
  }
  const std::size_t bytes = (d + 7) / 8;
  std::vector<unsigned char> buf(bytes);
  std::vector<Point> points;
  points.reserve(n);
  for (std::uint64_t j = 0; j < n; ++j) {
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes))) {
      throw std::runtime_error("unexpected end of file");
    }
    Point p(d);
    auto words = p.words();
    for (std::size_t b = 0; b < bytes; ++b) words[b / 8] |= std::uint64_t{buf[b]} << (8 * (b % 8));
    if (d % 64 != 0 && (words.back() >> (d % 64)) != 0) throw std::runtime_error("dataset padding bits set");
    points.push_back(std::move(p));
  }
  return points;
}

void write_binary_dataset(std::ostream& out, const std::vector<Point>& points) {
  check_dims(points);
  const std::uint64_t d = points.empty() ? 1 : points.front().dim();
  out.write(kMagic, sizeof kMagic);
  detail::put_le<std::uint32_t>(out, kVersion);
  detail::put_le<std::uint64_t>(out, points.size());
  detail::put_le<std::uint64_t>(out, d);
  const std::size_t bytes = (d + 7) / 8;
  std::vector<char> buf(bytes);
  for (const auto& p : points) {
    const auto words = p.words();
    for (std::size_t b = 0; b < bytes; ++b) buf[b] = static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xFF);
    out.write(buf.data(), static_cast<std::streamsize>(bytes));
  }
}

std::vector<Point> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[8] = {};
  in.read(magic, sizeof magic);
  const bool binary = in.gcount() == sizeof magic && std::memcmp(magic, kMagic, sizeof magic) == 0;
  in.clear();
  in.seekg(0);
  return binary ? read_binary_dataset(in) : read_text_dataset(in);
}

void write_dataset(const std::filesystem::path& path, const std::vector<Point>& points, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  if (binary) {
    write_binary_dataset(out, points);
  } else {
    write_text_dataset(out, points);
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace lshlab
