#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lshlab/hash_family.hpp"
#include "lshlab/point.hpp"
#include "lshlab/rng.hpp"
#include "lshlab/spectral.hpp"

namespace lshlab {

/// x uniform on {0,1}^d; y copies x except that each coordinate is
/// independently rerandomized with probability 1 - rho, so it differs from
/// x with probability (1 - rho)/2.
struct CorrelatedPair {
  Point x;
  Point y;
  double rho = 1.0;
};

CorrelatedPair correlated_pair(std::size_t d, double rho, CounterRng& rng);
CorrelatedPair correlated_pair(std::size_t d, double rho, std::uint64_t seed);

/// Per-coordinate disagreement probability (1 - e^{-t})/2 of an e^{-t}-correlated pair.
double flip_probability(double t);

struct McEstimate {
  double estimate = 0.0;
  double stderr = 0.0;  ///< sqrt(p(1 - p)/n)
  std::size_t samples = 0;
  std::size_t hits = 0;
};

/// Monte Carlo estimate of Pr_{h, (x,y)}[h(x) = h(y)] over rho-correlated
/// pairs. Sample i draws h and (x, y) from stream i of `seed`, so the
/// result does not depend on the thread count. Requires samples >= 100.
McEstimate mc_stability(const HashFamily& family, double rho, std::size_t samples, std::uint64_t seed);

/// Monte Carlo K(t) at each grid point (stream offsets differ per point).
StabilityCurve mc_stability_curve(const HashFamily& family, std::span<const double> grid, std::size_t samples,
                                  std::uint64_t seed);

enum class EvalMode { Exact, MonteCarlo };
std::string to_string(EvalMode mode);

/// e1 = Pr[dist > r] for an e^{-t_near}-correlated pair and
/// e2 = Pr[dist < cr] for an e^{-t_far}-correlated pair, in {0,1}^d.
struct TailProbabilities {
  double above_r = 0.0;
  double below_cr = 0.0;
  double stderr_above = 0.0;
  double stderr_below = 0.0;
  double eta_near = 0.0;
  double eta_far = 0.0;
  EvalMode mode = EvalMode::Exact;
};

TailProbabilities tail_probabilities(std::size_t d, double t_near, double t_far, double r, double cr, EvalMode mode,
                                     std::size_t samples = 0, std::uint64_t seed = kDefaultSeed);

/// Both sides of p (1 - Pr[dist > r]) <= K(u) <= q + Pr[dist < cr] for an
/// e^{-u}-correlated pair.
struct SandwichReport {
  double r = 0, cr = 0, u = 0, p = 0, q = 0;
  double tail_above_r = 0.0;
  double tail_below_cr = 0.0;
  double lower = 0.0;
  double k_value = 0.0;
  double k_stderr = 0.0;
  double upper = 0.0;
  EvalMode mode = EvalMode::Exact;
  bool passed = false;
  std::string message;
};

/// Exact mode: K(u) from the spectrum, tails by exact summation, tolerance 1e-9.
SandwichReport verify_sandwich(const FourierSpectrum& spectrum, double r, double cr, double u, double p, double q);
/// Monte Carlo K(u), exact tails, tolerance 5 standard errors.
SandwichReport verify_sandwich_mc(const HashFamily& family, double r, double cr, double u, double p, double q,
                                  std::size_t samples, std::uint64_t seed);

/// Jaccard distances of correlated pairs read as subsets of [d], where each
/// coordinate is rerandomized with probability t (so flipped with
/// probability t/2). The expected distance is t/(1 + t/2). Requires 0 <= t <= 1.
struct JaccardSummary {
  double t = 0.0;
  double predicted = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  double stderr = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t samples = 0;
};

JaccardSummary jaccard_of_correlated_sets(std::size_t d, double t, std::size_t samples, std::uint64_t seed);

/// counts[j] = number of sampled rho-correlated pairs at Hamming distance j.
std::vector<std::uint64_t> distance_histogram(std::size_t d, double rho, std::size_t samples, std::uint64_t seed);

void write_histogram_csv(std::ostream& out, std::span<const std::uint64_t> counts);
void write_jaccard_csv(std::ostream& out, const JaccardSummary& summary);

}  // namespace lshlab
