#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "lshlab/hash_family.hpp"
#include "lshlab/point.hpp"
#include "lshlab/rng.hpp"
#include "lshlab/sensitivity.hpp"

namespace lshlab {

struct IndexParams {
  double r = 0;
  double cr = 0;
  std::size_t k = 1;
  std::size_t L = 1;
  double delta = 0.1;
  std::uint64_t seed = kDefaultSeed;
  double p = 0;            ///< base near-collision probability (0 if unknown)
  double q = 0;            ///< base far-collision probability (0 if unknown)
  double predicted_pk = 0; ///< p^k
  double rho = 0;

  friend bool operator==(const IndexParams&, const IndexParams&) = default;
};

/// k = ceil(ln n / ln(1/q)), L = ceil(ln(1/delta) / p^k).
/// Requires n >= 2, 0 < delta < 1, 0 < q < p < 1 and q >= 1/n.
IndexParams plan(std::size_t n, const SensitivityProfile& profile, double delta);

/// Candidate inspections allowed per query.
inline std::size_t candidate_cap(const IndexParams& params) { return 3 * params.L; }

struct QueryResult {
  std::optional<std::size_t> id;
  std::size_t distance = 0;
  std::size_t candidates = 0;  ///< points whose distance was computed
  std::size_t tables_probed = 0;
};

struct IndexStats {
  std::size_t n = 0;
  std::size_t tables = 0;
  std::size_t buckets = 0;
  std::size_t entries = 0;  ///< n L
  double mean_bucket = 0;
  std::size_t max_bucket = 0;
  std::size_t memory_bytes = 0;
  double space_exponent = 0;      ///< log_n(n L)
  double predicted_exponent = 0;  ///< 1 + rho
};

/// Multi-table LSH index over {0,1}^d under Hamming distance.
///
/// Table j uses sample(seed, j) of power(family, k); its keys are the k
/// component labels. Each table is an open-addressed map from a 64-bit key
/// digest to a bucket; full keys are compared on every hit. Buckets list
/// point ids in insertion order. The index is immutable after build.
class NNIndex {
 public:
  static NNIndex build(std::vector<Point> points, const HashFamily& family, const IndexParams& params);

  /// Probes tables in order and returns the first candidate within cr,
  /// inspecting at most 3L candidates.
  QueryResult query(const Point& x) const;

  const IndexParams& params() const noexcept { return params_; }
  const HashFamily& family() const noexcept { return family_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t dim() const noexcept { return dim_; }
  IndexStats stats() const;

  /// Bucket contents of table j for the key of x (empty if none).
  std::span<const std::uint32_t> bucket(std::size_t table, const Point& x) const;

  void save(std::ostream& out) const;
  static NNIndex load(std::istream& in);
  void save(const std::filesystem::path& path) const;
  static NNIndex load(const std::filesystem::path& path);

  friend bool operator==(const NNIndex& a, const NNIndex& b);

 private:
  struct Table {
    std::vector<Label> keys;              ///< k labels per bucket
    std::vector<std::uint64_t> digests;   ///< per bucket
    std::vector<std::uint32_t> offsets;   ///< CSR, buckets + 1
    std::vector<std::uint32_t> ids;
    std::vector<std::uint32_t> slots;     ///< bucket + 1, 0 = empty; power-of-two size

    friend bool operator==(const Table&, const Table&) = default;
  };

  NNIndex(HashFamily family) : family_(std::move(family)) {}
  void make_functions();
  std::optional<std::size_t> find_bucket(const Table& table, std::span<const Label> key) const;
  void key_of(std::size_t table, const Point& x, std::vector<Label>& key) const;

  HashFamily family_;
  IndexParams params_;
  std::size_t dim_ = 0;
  std::vector<Point> points_;
  std::vector<HashFunction> functions_;
  std::vector<Table> tables_;
};

/// Planted near-neighbor protocol: n uniform points in {0,1}^d; each query
/// is a uniformly chosen stored point with `plant` coordinates flipped,
/// where `plant` is drawn uniformly from [1, r] (or equals r when
/// at_radius is set).
struct ExperimentConfig {
  std::size_t n = 2000;
  std::size_t d = 128;
  std::size_t r = 8;
  double c = 2.0;
  double delta = 0.1;
  std::size_t queries = 200;
  bool at_radius = false;
  std::uint64_t seed = kDefaultSeed;
};

struct ExperimentReport {
  IndexParams params;
  IndexStats stats;
  std::size_t queries = 0;
  std::size_t successes = 0;
  double success_rate = 0;
  std::size_t max_candidates = 0;
  double mean_candidates = 0;
  std::size_t hash_evaluations = 0;  ///< per query: L k
  bool all_within_cr = true;
};

std::vector<Point> random_points(std::size_t n, std::size_t d, std::uint64_t seed);
ExperimentReport planted_experiment(const ExperimentConfig& config);

}  // namespace lshlab
