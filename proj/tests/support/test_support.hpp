#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lshlab/hash_family.hpp"
#include "lshlab/hash_function.hpp"
#include "lshlab/rng.hpp"

namespace lshlab::fixtures {

/// Explicit table on {0,1}^d with labels drawn uniformly from [0, labels).
inline HashFunction random_table(std::size_t d, std::size_t labels, CounterRng& rng) {
  std::vector<Label> table(std::size_t{1} << d);
  for (auto& l : table) l = rng.below(labels);
  return HashFunction::table(d, std::move(table));
}

/// Family uniform over `size` random tables (weights 1/size).
inline HashFamily random_table_family(std::size_t d, std::size_t size, std::size_t labels, CounterRng& rng) {
  std::vector<WeightedFunction> fns;
  for (std::size_t i = 0; i < size; ++i) {
    fns.push_back({random_table(d, labels, rng), Probability(1, static_cast<std::int64_t>(size))});
  }
  return explicit_family(d, std::move(fns));
}

}  // namespace lshlab::fixtures
