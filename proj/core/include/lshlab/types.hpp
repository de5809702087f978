#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace lshlab {

/// Hash codomain element. Every hash function maps into {0, ..., U-1}.
using Label = std::uint64_t;

/// Exact probability. Finite family weights and enumerated collision
/// probabilities are kept rational so that sensitivity checks compare exactly.
using Probability = boost::rational<std::int64_t>;

inline double to_double(const Probability& p) {
  return static_cast<double>(p.numerator()) / static_cast<double>(p.denominator());
}

/// "3/8", or "1" for integers.
std::string to_string(const Probability& p);
/// Accepts "a/b" or an integer.
Probability parse_probability(std::string_view text);

}  // namespace lshlab
