#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lshlab/hash_family.hpp"
#include "lshlab/hash_function.hpp"

namespace lshlab {

/// Largest d for which the 2^d transform is attempted.
inline constexpr std::size_t kMaxSpectralDim = 20;
/// Accumulated weights below this are float noise and are zeroed.
inline constexpr double kPruneThreshold = 1e-15;

/// Fourier weights w_S = sum_u f_u^(S)^2 of the indicator-vector embedding
/// x -> e_{h(x)} of a hash function, or their expectation over a family.
/// Subsets S of [d] are bitmasks; weights[S] is dense over all 2^d masks.
struct FourierSpectrum {
  std::size_t dim = 0;
  std::vector<double> weights;
  std::size_t pruned = 0;  ///< weights zeroed by the 1e-15 pruning pass

  double weight(std::uint64_t mask) const { return weights.at(mask); }
  /// Compensated sum of all weights (Parseval: 1 for unit-vector embeddings).
  double total() const;
  /// W_k = sum over |S| = k of w_S, for k = 0..d.
  std::vector<double> level_weights() const;
};

FourierSpectrum fourier_spectrum(const HashFunction& h);

/// Exact E_h[w_S] over the family's finite support.
FourierSpectrum family_spectrum(const HashFamily& family);
/// Average spectrum of `samples` functions drawn as family.sample(seed, i).
FourierSpectrum family_spectrum(const HashFamily& family, std::size_t samples, std::uint64_t seed);

/// Builds a spectrum from explicit (mask, weight) atoms; unspecified masks are 0.
FourierSpectrum spectrum_from_atoms(std::size_t dim, std::span<const std::pair<std::uint64_t, double>> atoms);

/// S(rho) = sum_S w_S rho^|S|, the collision probability of a rho-correlated pair.
double stability(const FourierSpectrum& spectrum, double rho);

/// K(t) = S(e^{-t}).
double stability_k(const FourierSpectrum& spectrum, double t);
double stability_k(const HashFamily& family, double t);

/// 1 - K(t) computed as sum_{k>=1} W_k (1 - e^{-kt}), accurate when K is near 1.
double stability_deficit(const FourierSpectrum& spectrum, double t);

/// Exact sum over all 4^d ordered pairs of Pr[(x, y)] * [h(x) = h(y)] for
/// rho-correlated (x, y). Independent of the Fourier route. Requires d <= 12.
double brute_force_stability(const HashFunction& h, double rho);

enum class Provenance { ExactSpectral, MonteCarlo };
std::string to_string(Provenance p);

struct StabilityCurve {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> stderrs;  ///< Monte Carlo curves only
  Provenance provenance = Provenance::ExactSpectral;
  std::size_t pruned = 0;
};

StabilityCurve stability_curve(const FourierSpectrum& spectrum, std::span<const double> grid);
StabilityCurve stability_curve(const HashFamily& family, std::span<const double> grid);

struct LogConvexityCertificate {
  bool passed = true;
  std::size_t checks = 0;
  /// max over midpoint checks of K(m)^2 - K(t1) K(t2); <= 0 for a log-convex curve.
  double worst_slack = -1.0;
  /// max over all checks of lhs/rhs - 1.
  double worst_relative = -1.0;
  std::array<double, 3> worst_triple{0, 0, 0};  ///< (t1, m, t2) attaining worst_relative
  std::size_t pruned = 0;
  std::string message;
};

/// Checks log-convexity of an exact curve with at least 3 points: for every
/// pair (t1, t2) whose midpoint m is a grid point, K(m)^2 <= K(t1) K(t2) (1 + tol);
/// for every consecutive triple a < m < b, K(m) <= K(a)^l K(b)^(1-l) (1 + tol)
/// with l = (b - m)/(b - a).
LogConvexityCertificate check_log_convexity(const StabilityCurve& curve, double tolerance = 1e-9);

/// ln(1/K(t)) / ln(1/K(ct)); at least 1/c for any family by log-convexity.
/// Requires t > 0, c >= 1 and K(t) < 1.
double stability_ratio(const FourierSpectrum& spectrum, double t, double c);
double stability_ratio(const HashFamily& family, double t, double c);

/// CSV with header `mask,weight`, nonzero weights only.
void write_spectrum_csv(std::ostream& out, const FourierSpectrum& spectrum);
/// CSV with header `t,K` (plus `stderr` for Monte Carlo curves).
void write_curve_csv(std::ostream& out, const StabilityCurve& curve);

}  // namespace lshlab
