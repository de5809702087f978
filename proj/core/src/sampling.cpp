#include "lshlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "lshlab/binomial.hpp"
#include "lshlab/numeric.hpp"
#include "lshlab/parallel.hpp"

namespace lshlab {

namespace {

constexpr std::size_t kChunks = 64;

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("correlation rho must lie in [0, 1]");
}

// Sample indices c, c + kChunks, c + 2 kChunks, ... belong to chunk c.
template <class PerSample>
std::vector<std::uint64_t> count_hits(std::size_t samples, PerSample per_sample) {
  const std::size_t chunks = std::min(kChunks, samples);
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_chunks(chunks, [&](std::size_t c) {
    std::uint64_t h = 0;
    for (std::size_t i = c; i < samples; i += chunks) h += per_sample(i) ? 1 : 0;
    hits[c] = h;
  });
  return hits;
}

McEstimate make_estimate(std::size_t hits, std::size_t samples) {
  McEstimate e;
  e.samples = samples;
  e.hits = hits;
  e.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  e.stderr = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(samples));
  return e;
}

}  // namespace

CorrelatedPair correlated_pair(std::size_t d, double rho, CounterRng& rng) {
  check_rho(rho);
  CorrelatedPair pair{Point(d), Point(d), rho};
  auto xw = pair.x.words();
  for (std::size_t w = 0; w < xw.size(); ++w) {
    const std::size_t bits = std::min<std::size_t>(64, d - 64 * w);
    xw[w] = bits == 64 ? rng.next() : rng.next() & ((std::uint64_t{1} << bits) - 1);
  }
  pair.y = pair.x;
  const double rerandomize = 1.0 - rho;
  if (rerandomize > 0.0) {
    for (std::size_t i = 0; i < d; ++i) {
      if (rng.uniform() < rerandomize) pair.y.set(i, rng.coin());
    }
  }
  return pair;
}

CorrelatedPair correlated_pair(std::size_t d, double rho, std::uint64_t seed) {
  CounterRng rng(seed);
  return correlated_pair(d, rho, rng);
}

double flip_probability(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("flip_probability requires t >= 0");
  return -std::expm1(-t) / 2.0;
}

McEstimate mc_stability(const HashFamily& family, double rho, std::size_t samples, std::uint64_t seed) {
  check_rho(rho);
  if (samples < 100) throw std::invalid_argument("mc_stability requires at least 100 samples");
  const std::size_t d = family.dim();
  const auto hits = count_hits(samples, [&](std::size_t i) {
    CounterRng rng(seed, i);
    const auto h = family.draw(rng);
    const auto pair = correlated_pair(d, rho, rng);
    return h(pair.x) == h(pair.y);
  });
  std::size_t total = 0;
  for (auto h : hits) total += h;
  return make_estimate(total, samples);
}

StabilityCurve mc_stability_curve(const HashFamily& family, std::span<const double> grid, std::size_t samples,
                                  std::uint64_t seed) {
  StabilityCurve curve;
  curve.provenance = Provenance::MonteCarlo;
  curve.grid.assign(grid.begin(), grid.end());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (!(grid[g] >= 0.0)) throw std::invalid_argument("K(t) requires t >= 0");
    const auto e = mc_stability(family, std::exp(-grid[g]), samples, mix64(seed + g));
    curve.values.push_back(e.estimate);
    curve.stderrs.push_back(e.stderr);
  }
  return curve;
}

std::string to_string(EvalMode mode) { return mode == EvalMode::Exact ? "exact" : "mc"; }

TailProbabilities tail_probabilities(std::size_t d, double t_near, double t_far, double r, double cr, EvalMode mode,
                                     std::size_t samples, std::uint64_t seed) {
  const auto dd = static_cast<double>(d);
  if (!(r >= 0.0 && r <= dd)) throw std::invalid_argument("tail_probabilities: r must lie in [0, d]");
  if (!(cr >= 0.0 && cr <= dd)) throw std::invalid_argument("tail_probabilities: cr must lie in [0, d]");
  TailProbabilities tails;
  tails.mode = mode;
  tails.eta_near = flip_probability(t_near);
  tails.eta_far = flip_probability(t_far);
  if (mode == EvalMode::Exact) {
    tails.above_r = binomial_tail_above(d, tails.eta_near, r);
    tails.below_cr = binomial_tail_below(d, tails.eta_far, cr);
    return tails;
  }
  if (samples < 100) throw std::invalid_argument("Monte Carlo tails require at least 100 samples");
  const double rho_near = std::exp(-t_near);
  const double rho_far = std::exp(-t_far);
  const auto above = count_hits(samples, [&](std::size_t i) {
    CounterRng rng(seed, 2 * i);
    const auto pair = correlated_pair(d, rho_near, rng);
    return static_cast<double>(hamming(pair.x, pair.y)) > r;
  });
  const auto below = count_hits(samples, [&](std::size_t i) {
    CounterRng rng(seed, 2 * i + 1);
    const auto pair = correlated_pair(d, rho_far, rng);
    return static_cast<double>(hamming(pair.x, pair.y)) < cr;
  });
  std::size_t a = 0;
  std::size_t b = 0;
  for (auto h : above) a += h;
  for (auto h : below) b += h;
  const auto ea = make_estimate(a, samples);
  const auto eb = make_estimate(b, samples);
  tails.above_r = ea.estimate;
  tails.stderr_above = ea.stderr;
  tails.below_cr = eb.estimate;
  tails.stderr_below = eb.stderr;
  return tails;
}

namespace {

SandwichReport sandwich_core(std::size_t d, double r, double cr, double u, double p, double q) {
  if (!(u >= 0.0)) throw std::invalid_argument("verify_sandwich requires u >= 0");
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) throw std::invalid_argument("verify_sandwich: p, q must be probabilities");
  SandwichReport rep;
  rep.r = r;
  rep.cr = cr;
  rep.u = u;
  rep.p = p;
  rep.q = q;
  const auto tails = tail_probabilities(d, u, u, r, cr, EvalMode::Exact);
  rep.tail_above_r = tails.above_r;
  rep.tail_below_cr = tails.below_cr;
  rep.lower = p * (1.0 - tails.above_r);
  rep.upper = q + tails.below_cr;
  return rep;
}

void judge(SandwichReport& rep, double slack) {
  const bool lower_ok = rep.lower <= rep.k_value + slack;
  const bool upper_ok = rep.k_value <= rep.upper + slack;
  rep.passed = lower_ok && upper_ok;
  rep.message = rep.passed ? "PASS" : (!lower_ok ? "FAILED: lower bound p(1 - Pr[dist > r]) exceeds K(u)"
                                                 : "FAILED: K(u) exceeds q + Pr[dist < cr]");
}

}  // namespace

SandwichReport verify_sandwich(const FourierSpectrum& spectrum, double r, double cr, double u, double p, double q) {
  auto rep = sandwich_core(spectrum.dim, r, cr, u, p, q);
  rep.mode = EvalMode::Exact;
  rep.k_value = stability_k(spectrum, u);
  judge(rep, 1e-9);
  return rep;
}

SandwichReport verify_sandwich_mc(const HashFamily& family, double r, double cr, double u, double p, double q,
                                  std::size_t samples, std::uint64_t seed) {
  auto rep = sandwich_core(family.dim(), r, cr, u, p, q);
  rep.mode = EvalMode::MonteCarlo;
  const auto e = mc_stability(family, std::exp(-u), samples, seed);
  rep.k_value = e.estimate;
  rep.k_stderr = e.stderr;
  judge(rep, 5.0 * e.stderr);
  return rep;
}

JaccardSummary jaccard_of_correlated_sets(std::size_t d, double t, std::size_t samples, std::uint64_t seed) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("jaccard_of_correlated_sets requires 0 <= t <= 1");
  if (samples < 2) throw std::invalid_argument("jaccard_of_correlated_sets requires at least 2 samples");
  std::vector<double> dist(samples);
  const std::size_t chunks = std::min(kChunks, samples);
  parallel_chunks(chunks, [&](std::size_t c) {
    for (std::size_t i = c; i < samples; i += chunks) {
      CounterRng rng(seed, i);
      const auto pair = correlated_pair(d, 1.0 - t, rng);
      dist[i] = jaccard_distance(pair.x, pair.y);
    }
  });
  JaccardSummary s;
  s.t = t;
  s.predicted = t / (1.0 + t / 2.0);
  s.samples = samples;
  CompensatedSum sum;
  for (double v : dist) sum += v;
  s.mean = sum.value() / static_cast<double>(samples);
  CompensatedSum sq;
  for (double v : dist) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq.value() / static_cast<double>(samples - 1));
  s.stderr = s.stddev / std::sqrt(static_cast<double>(samples));
  const auto [lo, hi] = std::ranges::minmax(dist);
  s.min = lo;
  s.max = hi;
  return s;
}

std::vector<std::uint64_t> distance_histogram(std::size_t d, double rho, std::size_t samples, std::uint64_t seed) {
  std::vector<std::size_t> dist(samples);
  const std::size_t chunks = std::min(kChunks, std::max<std::size_t>(samples, 1));
  parallel_chunks(chunks, [&](std::size_t c) {
    for (std::size_t i = c; i < samples; i += chunks) {
      CounterRng rng(seed, i);
      const auto pair = correlated_pair(d, rho, rng);
      dist[i] = hamming(pair.x, pair.y);
    }
  });
  std::vector<std::uint64_t> counts(d + 1, 0);
  for (auto j : dist) ++counts[j];
  return counts;
}

void write_histogram_csv(std::ostream& out, std::span<const std::uint64_t> counts) {
  out << "distance,count\n";
  for (std::size_t j = 0; j < counts.size(); ++j) out << j << ',' << counts[j] << '\n';
}

void write_jaccard_csv(std::ostream& out, const JaccardSummary& s) {
  out << "t,predicted,mean,stddev,stderr,min,max,samples\n";
  out << format_number(s.t) << ',' << format_number(s.predicted) << ',' << format_number(s.mean) << ','
      << format_number(s.stddev) << ',' << format_number(s.stderr) << ',' << format_number(s.min) << ','
      << format_number(s.max) << ',' << s.samples << '\n';
}

}  // namespace lshlab
