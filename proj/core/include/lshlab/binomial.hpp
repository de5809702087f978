#pragma once

#include <cstdint>

namespace lshlab {

/// log Pr[Binomial(n, p) = k], evaluated with Loader's saddle-point
/// expansion so that it stays accurate for n in the billions.
double binomial_log_pmf(std::uint64_t n, double p, std::uint64_t k);

/// log Pr[X >= k] and log Pr[X <= k] by direct summation of pmf terms in
/// log space, walking away from the mode so the first term dominates.
/// Returns -inf for an empty event.
double binomial_log_tail_ge(std::uint64_t n, double p, std::uint64_t k);
double binomial_log_tail_le(std::uint64_t n, double p, std::uint64_t k);

/// Pr[X > x] and Pr[X < x] for a real threshold x.
double binomial_tail_above(std::uint64_t n, double p, double x);
double binomial_tail_below(std::uint64_t n, double p, double x);

}  // namespace lshlab
