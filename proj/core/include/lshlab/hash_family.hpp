#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lshlab/hash_function.hpp"
#include "lshlab/rng.hpp"
#include "lshlab/types.hpp"

namespace lshlab {

struct WeightedFunction {
  HashFunction fn;
  Probability weight;

  friend bool operator==(const WeightedFunction&, const WeightedFunction&) = default;
};

enum class FamilyKind { BitSampling, MinHash, Trivial, Constant, Explicit };

std::string to_string(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view name);

/// Everything needed to rebuild a family. `power` is the concatenation
/// length k of the powering construction (1 = the base family itself).
struct FamilyDescriptor {
  FamilyKind kind = FamilyKind::BitSampling;
  std::size_t dim = 1;
  std::size_t radius = 0;  ///< trivial families only
  std::uint64_t seed = kDefaultSeed;
  std::size_t power = 1;
  std::vector<WeightedFunction> functions;  ///< explicit families only

  friend bool operator==(const FamilyDescriptor&, const FamilyDescriptor&) = default;
};

/// Largest support that support() will materialize by default.
inline constexpr std::size_t kSupportLimit = std::size_t{1} << 22;

/// A probability distribution over hash functions {0,1}^d -> U.
///
/// Families are immutable and cheap to copy. A family either has a finite
/// weighted support (enumerable for exact analysis) or is only a seeded
/// generator; every family can be sampled. sample(seed, i) always returns
/// the same function for the same (seed, i).
class HashFamily {
 public:
  static HashFamily from_descriptor(const FamilyDescriptor& descriptor);

  std::size_t dim() const;
  const FamilyDescriptor& descriptor() const;
  const std::string& description() const;

  /// True when collision probability of (x, y) depends only on dist(x, y).
  bool coordinate_symmetric() const;

  /// Number of support atoms, or nullopt for generator-only families or
  /// supports too large to count in 64 bits.
  std::optional<std::size_t> support_size() const;

  /// Weighted support; weights sum to exactly 1. Throws std::length_error
  /// if the support is unavailable or larger than `limit`.
  std::vector<WeightedFunction> support(std::size_t limit = kSupportLimit) const;

  HashFunction draw(CounterRng& rng) const;
  HashFunction sample(std::uint64_t seed, std::uint64_t index) const;

 private:
  struct Impl;
  friend HashFamily bit_sampling_family(std::size_t);
  friend HashFamily minhash_family(std::size_t, std::uint64_t);
  friend HashFamily trivial_family(std::size_t, std::size_t);
  friend HashFamily constant_family(std::size_t);
  friend HashFamily explicit_family(std::size_t, std::vector<WeightedFunction>);
  friend HashFamily power(const HashFamily&, std::size_t);

  explicit HashFamily(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Uniform over the d coordinate projections x -> x_i.
HashFamily bit_sampling_family(std::size_t d);

/// Random-permutation min-element hashing of points read as subsets of [d].
/// Exact support (all d! permutations) is available for d <= 8.
HashFamily minhash_family(std::size_t d, std::uint64_t seed = kDefaultSeed);

/// Uniform over the pair-collapse functions h_{x,y}, one per unordered pair
/// with 1 <= dist(x, y) <= r. Has q = 0 for every cr > r.
HashFamily trivial_family(std::size_t d, std::size_t r);

HashFamily constant_family(std::size_t d);

/// Finite family; weights must be nonnegative and sum to exactly 1.
HashFamily explicit_family(std::size_t d, std::vector<WeightedFunction> functions);

/// Concatenates k independent draws. (r, cr, p, q)-sensitive becomes
/// (r, cr, p^k, q^k)-sensitive. power(f, 1) is f.
HashFamily power(const HashFamily& family, std::size_t k);

}  // namespace lshlab
