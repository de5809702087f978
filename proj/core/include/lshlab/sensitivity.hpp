#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "lshlab/hash_family.hpp"
#include "lshlab/point.hpp"
#include "lshlab/types.hpp"

namespace lshlab {

enum class DistanceKind { Hamming, Jaccard };

enum class RhoStatus {
  Defined,
  TrivialRegime,  ///< q = 0: rho undefined, the family is "trivially optimal"
  PerfectNear,    ///< p = 1
  NotSensitive,   ///< q >= p
};

std::string to_string(DistanceKind kind);
std::string to_string(RhoStatus status);

/// (r, cr, p, q)-sensitivity and rho = ln(1/p)/ln(1/q).
///
/// rho is populated iff 0 < q < p < 1. Exact rational p and q are carried
/// when they came from enumeration or from an integral closed form.
struct SensitivityProfile {
  DistanceKind kind = DistanceKind::Hamming;
  double r = 0;
  double cr = 0;
  double p = 0;
  double q = 0;
  std::optional<double> rho;
  RhoStatus status = RhoStatus::NotSensitive;
  std::optional<Probability> p_exact;
  std::optional<Probability> q_exact;
};

SensitivityProfile make_profile(DistanceKind kind, double r, double cr, double p, double q);
SensitivityProfile make_profile(DistanceKind kind, double r, double cr, Probability p, Probability q);

/// Closed form for bit sampling: p = 1 - r/d, q = 1 - cr/d.
/// Requires 0 < r, c > 1 and cr < d ("degenerate q" otherwise).
SensitivityProfile bit_sampling_profile(std::size_t d, double r, double c);

/// Exact Pr_h[h(x) = h(y)] over the family's finite support.
Probability collision_probability(const HashFamily& family, const Point& x, const Point& y);

/// Largest d accepted by exact enumeration.
inline constexpr std::size_t kMaxExactDim = 14;

/// p = min collision probability over pairs with 1 <= dist <= r, q = max over
/// pairs with dist >= cr, under Hamming distance. Coordinate-symmetric
/// families are checked on one representative pair per distance; all others
/// by enumerating every pair. Requires a finite support, d <= 14 and
/// 1 <= r < cr <= d.
SensitivityProfile exact_sensitivity(const HashFamily& family, std::size_t r, std::size_t cr);

/// Same, with points read as subsets of [d] under Jaccard distance.
/// Near pairs are distinct sets with distance <= r; far pairs have distance >= cr.
SensitivityProfile exact_jaccard_sensitivity(const HashFamily& family, double r, double cr);

}  // namespace lshlab
