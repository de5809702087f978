#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lshlab::detail {

template <class T>
void put_le(std::ostream& out, T value) {
  char buf[sizeof(T)];
  auto v = static_cast<std::uint64_t>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<char>(v & 0xFF);
    v >>= 8;
  }
  out.write(buf, sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) throw std::runtime_error("unexpected end of file");
  std::uint64_t v = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) v = (v << 8) | buf[i];
  return static_cast<T>(v);
}

inline void put_f64(std::ostream& out, double value) {
  std::uint64_t bits;
  static_assert(sizeof bits == sizeof value);
  __builtin_memcpy(&bits, &value, sizeof bits);
  put_le(out, bits);
}

inline double get_f64(std::istream& in) {
  const auto bits = get_le<std::uint64_t>(in);
  double value;
  __builtin_memcpy(&value, &bits, sizeof value);
  return value;
}

inline void put_string(std::ostream& out, const std::string& s) {
  put_le<std::uint64_t>(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string get_string(std::istream& in, std::uint64_t limit = std::uint64_t{1} << 30) {
  const auto n = get_le<std::uint64_t>(in);
  if (n > limit) throw std::runtime_error("string length out of range");
  std::string s(n, '\0');
  if (!in.read(s.data(), static_cast<std::streamsize>(n))) throw std::runtime_error("unexpected end of file");
  return s;
}

}  // namespace lshlab::detail
