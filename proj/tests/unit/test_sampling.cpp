#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lshlab/binomial.hpp"
#include "lshlab/parallel.hpp"
#include "lshlab/sampling.hpp"
#include "lshlab/spectral.hpp"
#include "test_support.hpp"

using namespace lshlab;

TEST(CorrelatedPair, Extremes) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = correlated_pair(100, 1.0, s);
    EXPECT_EQ(p.x, p.y);
  }
  double total = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto p = correlated_pair(100, 0.0, s);
    total += static_cast<double>(hamming(p.x, p.y));
  }
  EXPECT_NEAR(total / 200, 50.0, 3 * std::sqrt(25.0 / 200));
  EXPECT_THROW(correlated_pair(4, 1.2, 0), std::invalid_argument);
}

TEST(CorrelatedPair, HalfCorrelationMean) {
  const std::size_t d = 10000;
  const int n = 1000;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    const auto p = correlated_pair(d, 0.5, static_cast<std::uint64_t>(i));
    sum += static_cast<double>(hamming(p.x, p.y)) / d;
  }
  const double stderr = std::sqrt(0.25 * 0.75 / d / n);
  EXPECT_NEAR(sum / n, 0.25, 3 * stderr);
}

TEST(McStability, ConstantFamily) {
  const auto e = mc_stability(constant_family(8), 0.3, 500, 1);
  EXPECT_EQ(e.estimate, 1.0);
  EXPECT_EQ(e.stderr, 0.0);
  EXPECT_THROW(mc_stability(constant_family(8), 0.3, 50, 1), std::invalid_argument);
}

TEST(McStability, BitSamplingMatchesExact) {
  const auto e = mc_stability(bit_sampling_family(32), 0.5, 20000, 3);
  EXPECT_NEAR(e.estimate, 0.75, 4 * e.stderr);
}

TEST(McStability, RandomTableMatchesBruteForce) {
  CounterRng rng(8);
  const auto h = fixtures::random_table(8, 3, rng);
  const auto f = explicit_family(8, {{h, Probability(1)}});
  const auto e = mc_stability(f, 0.6, 20000, 5);
  EXPECT_NEAR(e.estimate, brute_force_stability(h, 0.6), 4 * e.stderr);
}

TEST(McStability, IndependentOfThreadCount) {
  const auto f = minhash_family(20, 1);
  setenv("LSHLAB_THREADS", "1", 1);
  const auto a = mc_stability(f, 0.7, 3000, 9);
  setenv("LSHLAB_THREADS", "4", 1);
  const auto b = mc_stability(f, 0.7, 3000, 9);
  unsetenv("LSHLAB_THREADS");
  EXPECT_EQ(a.hits, b.hits);
}

TEST(Tails, ZeroNoise) {
  const auto t = tail_probabilities(50, 0.0, 0.0, 0.0, 1.0, EvalMode::Exact);
  EXPECT_EQ(t.above_r, 0.0);
  EXPECT_NEAR(t.below_cr, 1.0, 1e-15);
  EXPECT_THROW(tail_probabilities(50, 0.1, 0.1, 51.0, 1.0, EvalMode::Exact), std::invalid_argument);
}

TEST(Tails, MonteCarloAgreesWithExact) {
  const double t = -std::log1p(-0.02);  // eta = 0.01
  const auto ex = tail_probabilities(1000, t, t, 15.0, 5.0, EvalMode::Exact);
  EXPECT_NEAR(ex.eta_near, 0.01, 1e-15);
  const auto mc = tail_probabilities(1000, t, t, 15.0, 5.0, EvalMode::MonteCarlo, 20000, 2);
  EXPECT_NEAR(mc.above_r, ex.above_r, 4 * mc.stderr_above + 1e-12);
  EXPECT_NEAR(mc.below_cr, ex.below_cr, 4 * mc.stderr_below + 1e-12);
}

TEST(Sandwich, BitSamplingExact) {
  const auto spec = family_spectrum(bit_sampling_family(12));
  for (double u : {0.1, 0.3, 1.0}) {
    const auto rep = verify_sandwich(spec, 2, 4, u, 10.0 / 12, 8.0 / 12);
    EXPECT_TRUE(rep.passed) << rep.message;
    EXPECT_LE(rep.lower, rep.k_value + 1e-9);
    EXPECT_LE(rep.k_value, rep.upper + 1e-9);
  }
}

TEST(Sandwich, LargeNoiseIsTrivial) {
  const auto spec = family_spectrum(bit_sampling_family(12));
  const auto rep = verify_sandwich(spec, 2, 4, 30.0, 10.0 / 12, 8.0 / 12);
  EXPECT_TRUE(rep.passed);
  EXPECT_NEAR(rep.k_value, 0.5, 1e-12);
}

TEST(Sandwich, WrongParametersFail) {
  const auto spec = family_spectrum(bit_sampling_family(12));
  const auto rep = verify_sandwich(spec, 2, 4, 1.0, 1.0, 0.0);
  EXPECT_FALSE(rep.passed);
  EXPECT_NE(rep.message.find("FAILED"), std::string::npos);
}

TEST(Sandwich, MonteCarloMode) {
  const auto rep = verify_sandwich_mc(bit_sampling_family(12), 2, 4, 0.3, 10.0 / 12, 8.0 / 12, 5000, 3);
  EXPECT_TRUE(rep.passed);
  EXPECT_GT(rep.k_stderr, 0.0);
}

TEST(Jaccard, CorrelatedSets) {
  EXPECT_EQ(jaccard_of_correlated_sets(100, 0.0, 10, 1).max, 0.0);
  for (double t : {0.1, 0.5}) {
    const auto s = jaccard_of_correlated_sets(100000, t, 200, 4);
    EXPECT_NEAR(s.mean, s.predicted, 3 * s.stderr);
  }
  EXPECT_NEAR(jaccard_of_correlated_sets(10, 0.5, 2, 1).predicted, 0.4, 1e-15);
  EXPECT_THROW(jaccard_of_correlated_sets(10, 1.5, 10, 1), std::invalid_argument);
}

TEST(Histogram, CountsSumToSamples) {
  const auto h = distance_histogram(20, 0.5, 1000, 3);
  std::uint64_t total = 0;
  for (auto c : h) total += c;
  EXPECT_EQ(total, 1000u);
  std::ostringstream out;
  write_histogram_csv(out, h);
  EXPECT_EQ(out.str().rfind("distance,count\n", 0), 0u);
}

TEST(McCurve, StreamsPerPoint) {
  const std::vector<double> grid{0.0, 0.5};
  const auto c = mc_stability_curve(bit_sampling_family(8), grid, 2000, 1);
  EXPECT_EQ(c.values[0], 1.0);
  EXPECT_NEAR(c.values[1], (1 + std::exp(-0.5)) / 2, 4 * c.stderrs[1]);
}
