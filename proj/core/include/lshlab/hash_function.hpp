#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lshlab/point.hpp"
#include "lshlab/types.hpp"

namespace lshlab {

class HashFunction;

namespace kinds {

struct Projection {
  std::size_t coord;
};
/// Label is the restriction x|_S read as a binary number (coords[0] is bit 0).
struct Subset {
  std::vector<std::size_t> coords;
};
struct Parity {
  std::vector<std::size_t> coords;
};
struct Constant {};
/// labels[x.to_index()] for every x in {0,1}^d.
struct Table {
  std::vector<Label> labels;
};
/// rank[i] is the position of element i in a random permutation of [d].
/// The label of a nonempty set is its element of minimum rank; the empty
/// set gets the reserved label d.
struct MinHash {
  std::vector<std::uint32_t> rank;
};
/// h(a) = h(b) = 0 and h(z) = 1 + z.to_index() for every other z.
struct PairCollapse {
  Point a;
  Point b;
};
/// Concatenation (h_1, ..., h_k); see HashFunction::operator() for packing.
struct Tuple {
  std::vector<HashFunction> parts;
};

}  // namespace kinds

/// A deterministic map {0,1}^d -> {0, ..., U-1}.
///
/// Tuple labels are packed in mixed radix: with U_j the codomain size of
/// part j, (l_1, ..., l_k) packs to l_1 + U_1 (l_2 + U_2 (l_3 + ...)). The
/// packing is a bijection, so two tuples collide iff every part collides.
class HashFunction {
 public:
  using Kind = std::variant<kinds::Projection, kinds::Subset, kinds::Parity, kinds::Constant,
                            kinds::Table, kinds::MinHash, kinds::PairCollapse, kinds::Tuple>;

  static HashFunction projection(std::size_t dim, std::size_t coord);
  static HashFunction subset(std::size_t dim, std::vector<std::size_t> coords);
  static HashFunction parity(std::size_t dim, std::vector<std::size_t> coords);
  static HashFunction constant(std::size_t dim);
  static HashFunction table(std::size_t dim, std::vector<Label> labels);
  static HashFunction minhash(std::size_t dim, std::vector<std::uint32_t> rank);
  static HashFunction pair_collapse(Point a, Point b);
  static HashFunction tuple(std::vector<HashFunction> parts);

  std::size_t dim() const noexcept { return dim_; }
  const Kind& kind() const noexcept { return kind_; }
  std::string kind_name() const;

  /// Throws std::invalid_argument if x.dim() != dim(), and
  /// std::overflow_error for a tuple whose packed codomain exceeds 64 bits.
  Label operator()(const Point& x) const;

  /// Component labels; a non-tuple function yields a single component.
  void components(const Point& x, std::vector<Label>& out) const;

  /// Codomain size U, or nullopt if it does not fit in 64 bits.
  std::optional<Label> label_count() const;

  /// Labels of all 2^d points in index order. Requires dim <= 26.
  std::vector<Label> label_table() const;

  friend bool operator==(const HashFunction& a, const HashFunction& b);

 private:
  HashFunction(std::size_t dim, Kind kind) : dim_(dim), kind_(std::move(kind)) {}
  Label evaluate(const Point& x) const;

  std::size_t dim_ = 0;
  Kind kind_;
};

}  // namespace lshlab
