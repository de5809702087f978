#include "lshlab/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "lshlab/numeric.hpp"
#include "lshlab/parallel.hpp"

namespace lshlab {

namespace {

// Per-mask compensated accumulator for spectra.
struct SpectrumAccumulator {
  std::vector<double> sum;
  std::vector<double> comp;

  explicit SpectrumAccumulator(std::size_t n) : sum(n, 0.0), comp(n, 0.0) {}

  void add(std::size_t i, double x) {
    const double t = sum[i] + x;
    if (std::fabs(sum[i]) >= std::fabs(x)) {
      comp[i] += (sum[i] - t) + x;
    } else {
      comp[i] += (x - t) + sum[i];
    }
    sum[i] = t;
  }

  FourierSpectrum finish(std::size_t dim) const {
    FourierSpectrum s;
    s.dim = dim;
    s.weights.resize(sum.size());
    for (std::size_t i = 0; i < sum.size(); ++i) {
      const double w = sum[i] + comp[i];
      if (w < kPruneThreshold) {
        if (w != 0.0) ++s.pruned;
        s.weights[i] = 0.0;
      } else {
        s.weights[i] = w;
      }
    }
    return s;
  }
};

// Unnormalized in-place Walsh-Hadamard butterfly: out[S] = sum_x in[x] (-1)^{|S & x|}.
void walsh_hadamard(std::vector<double>& v) {
  const std::size_t n = v.size();
  for (std::size_t len = 1; len < n; len <<= 1) {
    for (std::size_t i = 0; i < n; i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = v[j];
        const double b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

void require_spectral_dim(std::size_t dim) {
  if (dim > kMaxSpectralDim) {
    throw std::invalid_argument("exact spectrum requires d <= " + std::to_string(kMaxSpectralDim) + " (got d=" +
                                std::to_string(dim) + "); use mc_stability for Monte Carlo estimates");
  }
}

// Adds weight * w_S(h) into acc for every mask S.
void accumulate_spectrum(const HashFunction& h, double weight, SpectrumAccumulator& acc) {
  const std::size_t d = h.dim();
  const std::size_t n = std::size_t{1} << d;
  const auto table = h.label_table();

  std::vector<Label> labels = table;
  std::ranges::sort(labels);
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  constexpr double kWorkBudget = 4e9;
  if (static_cast<double>(labels.size()) * static_cast<double>(n) * static_cast<double>(std::max<std::size_t>(d, 1)) >
      kWorkBudget) {
    throw std::invalid_argument("spectrum of a function with " + std::to_string(labels.size()) +
                                " labels at d=" + std::to_string(d) + " exceeds the transform budget");
  }

  const double scale = 1.0 / static_cast<double>(n);
  std::vector<double> f(n);
  for (const Label u : labels) {
    for (std::size_t x = 0; x < n; ++x) f[x] = table[x] == u ? 1.0 : 0.0;
    walsh_hadamard(f);
    for (std::size_t s = 0; s < n; ++s) {
      const double c = f[s] * scale;
      acc.add(s, weight * c * c);
    }
  }
}

}  // namespace

double FourierSpectrum::total() const {
  CompensatedSum s;
  for (double w : weights) s += w;
  return s.value();
}

std::vector<double> FourierSpectrum::level_weights() const {
  std::vector<CompensatedSum> levels(dim + 1);
  for (std::size_t m = 0; m < weights.size(); ++m) {
    if (weights[m] != 0.0) levels[static_cast<std::size_t>(std::popcount(m))] += weights[m];
  }
  std::vector<double> out(dim + 1);
  for (std::size_t k = 0; k <= dim; ++k) out[k] = levels[k].value();
  return out;
}

FourierSpectrum fourier_spectrum(const HashFunction& h) {
  require_spectral_dim(h.dim());
  SpectrumAccumulator acc(std::size_t{1} << h.dim());
  accumulate_spectrum(h, 1.0, acc);
  return acc.finish(h.dim());
}

FourierSpectrum family_spectrum(const HashFamily& family) {
  require_spectral_dim(family.dim());
  const auto support = family.support();
  SpectrumAccumulator acc(std::size_t{1} << family.dim());
  for (const auto& f : support) accumulate_spectrum(f.fn, to_double(f.weight), acc);
  return acc.finish(family.dim());
}

FourierSpectrum family_spectrum(const HashFamily& family, std::size_t samples, std::uint64_t seed) {
  require_spectral_dim(family.dim());
  if (samples == 0) throw std::invalid_argument("family_spectrum: samples must be positive");
  SpectrumAccumulator acc(std::size_t{1} << family.dim());
  const double w = 1.0 / static_cast<double>(samples);
  for (std::size_t i = 0; i < samples; ++i) accumulate_spectrum(family.sample(seed, i), w, acc);
  return acc.finish(family.dim());
}

FourierSpectrum spectrum_from_atoms(std::size_t dim, std::span<const std::pair<std::uint64_t, double>> atoms) {
  require_spectral_dim(dim);
  FourierSpectrum s;
  s.dim = dim;
  s.weights.assign(std::size_t{1} << dim, 0.0);
  for (const auto& [mask, w] : atoms) {
    if (mask >= s.weights.size()) throw std::invalid_argument("spectrum atom mask out of range");
    if (w < 0) throw std::invalid_argument("spectrum atom weight must be nonnegative");
    s.weights[mask] += w;
  }
  return s;
}

double stability(const FourierSpectrum& spectrum, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("stability: rho must lie in [0, 1]");
  const auto levels = spectrum.level_weights();
  CompensatedSum s;
  double power = 1.0;
  for (double w : levels) {
    s += w * power;
    power *= rho;
  }
  return s.value();
}

double stability_k(const FourierSpectrum& spectrum, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("K(t) requires t >= 0");
  const auto levels = spectrum.level_weights();
  CompensatedSum s;
  for (std::size_t k = 0; k < levels.size(); ++k) s += levels[k] * std::exp(-static_cast<double>(k) * t);
  return s.value();
}

double stability_k(const HashFamily& family, double t) { return stability_k(family_spectrum(family), t); }

double stability_deficit(const FourierSpectrum& spectrum, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("K(t) requires t >= 0");
  const auto levels = spectrum.level_weights();
  CompensatedSum s;
  for (std::size_t k = 1; k < levels.size(); ++k) s += levels[k] * -std::expm1(-static_cast<double>(k) * t);
  return s.value();
}

double brute_force_stability(const HashFunction& h, double rho) {
  if (h.dim() > 12) throw std::invalid_argument("brute_force_stability requires d <= 12");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("brute_force_stability: rho must lie in [0, 1]");
  const std::size_t d = h.dim();
  const std::size_t n = std::size_t{1} << d;
  const auto table = h.label_table();

  // Count colliding ordered pairs per Hamming distance; the counts are exact.
  const std::size_t chunks = std::min<std::size_t>(n, 64);
  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(d + 1, 0));
  parallel_chunks(chunks, [&](std::size_t c) {
    auto& counts = partial[c];
    for (std::size_t x = c; x < n; x += chunks) {
      for (std::size_t y = 0; y < n; ++y) {
        if (table[x] == table[y]) ++counts[static_cast<std::size_t>(std::popcount(x ^ y))];
      }
    }
  });
  std::vector<std::uint64_t> counts(d + 1, 0);
  for (const auto& p : partial) {
    for (std::size_t j = 0; j <= d; ++j) counts[j] += p[j];
  }

  // Pr[(x, y)] = 2^-d ((1 + rho)/2)^(d - j) ((1 - rho)/2)^j at distance j.
  const long double same = (1.0L + rho) / 2.0L;
  const long double diff = (1.0L - rho) / 2.0L;
  long double total = 0.0L;
  for (std::size_t j = 0; j <= d; ++j) {
    if (counts[j] == 0) continue;
    const long double pr = std::pow(same, static_cast<long double>(d - j)) * std::pow(diff, static_cast<long double>(j));
    total += static_cast<long double>(counts[j]) * pr;
  }
  return static_cast<double>(total / static_cast<long double>(n));
}

std::string to_string(Provenance p) { return p == Provenance::ExactSpectral ? "exact-spectral" : "monte-carlo"; }

StabilityCurve stability_curve(const FourierSpectrum& spectrum, std::span<const double> grid) {
  StabilityCurve curve;
  curve.provenance = Provenance::ExactSpectral;
  curve.pruned = spectrum.pruned;
  curve.grid.assign(grid.begin(), grid.end());
  curve.values.reserve(grid.size());
  for (double t : grid) curve.values.push_back(stability_k(spectrum, t));
  return curve;
}

StabilityCurve stability_curve(const HashFamily& family, std::span<const double> grid) {
  return stability_curve(family_spectrum(family), grid);
}

LogConvexityCertificate check_log_convexity(const StabilityCurve& curve, double tolerance) {
  if (curve.provenance != Provenance::ExactSpectral) {
    throw std::invalid_argument("log-convexity certificates require an exact-spectral curve");
  }
  const auto& t = curve.grid;
  const auto& k = curve.values;
  if (t.size() < 3 || t.size() != k.size()) throw std::invalid_argument("log-convexity check needs at least 3 grid points");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw std::invalid_argument("log-convexity grid must be strictly increasing");
  }
  for (double v : k) {
    if (!(v > 0.0)) throw std::invalid_argument("log-convexity check needs positive K values");
  }

  LogConvexityCertificate cert;
  cert.pruned = curve.pruned;
  cert.worst_relative = -std::numeric_limits<double>::infinity();
  cert.worst_slack = -std::numeric_limits<double>::infinity();
  auto record = [&](double lhs, double rhs, double a, double m, double b) {
    ++cert.checks;
    const double rel = lhs / rhs - 1.0;
    if (rel > cert.worst_relative) {
      cert.worst_relative = rel;
      cert.worst_triple = {a, m, b};
    }
    if (lhs > rhs * (1.0 + tolerance)) cert.passed = false;
  };

  // Midpoint form: K(m)^2 <= K(a) K(b) whenever m = (a + b)/2 is on the grid.
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 2; j < t.size(); ++j) {
      const double m = 0.5 * (t[i] + t[j]);
      const auto it = std::lower_bound(t.begin(), t.end(), m - 1e-12 * std::max(1.0, std::fabs(m)));
      if (it == t.end() || std::fabs(*it - m) > 1e-12 * std::max(1.0, std::fabs(m))) continue;
      const auto l = static_cast<std::size_t>(it - t.begin());
      const double lhs = k[l] * k[l];
      const double rhs = k[i] * k[j];
      cert.worst_slack = std::max(cert.worst_slack, lhs - rhs);
      record(lhs, rhs, t[i], t[l], t[j]);
    }
  }
  // Consecutive triples, any spacing.
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const double lambda = (t[i + 1] - t[i]) / (t[i + 1] - t[i - 1]);
    const double rhs = std::exp(lambda * std::log(k[i - 1]) + (1.0 - lambda) * std::log(k[i + 1]));
    record(k[i], rhs, t[i - 1], t[i], t[i + 1]);
  }

  if (cert.passed) {
    cert.message = "PASS: " + std::to_string(cert.checks) + " checks";
  } else {
    cert.message = "FAILED at (" + format_number(cert.worst_triple[0]) + ", " + format_number(cert.worst_triple[1]) +
                   ", " + format_number(cert.worst_triple[2]) + "): relative slack " +
                   format_number(cert.worst_relative);
  }
  return cert;
}

double stability_ratio(const FourierSpectrum& spectrum, double t, double c) {
  if (!(t > 0.0)) throw std::invalid_argument("stability_ratio requires t > 0");
  if (!(c >= 1.0)) throw std::invalid_argument("stability_ratio requires c >= 1");
  const double near = stability_deficit(spectrum, t);
  if (!(near > 0.0)) throw std::invalid_argument("stability_ratio undefined: K(t) = 1 (constant family)");
  const double far = stability_deficit(spectrum, c * t);
  return std::log1p(-near) / std::log1p(-far);
}

double stability_ratio(const HashFamily& family, double t, double c) {
  return stability_ratio(family_spectrum(family), t, c);
}

void write_spectrum_csv(std::ostream& out, const FourierSpectrum& spectrum) {
  out << "mask,weight\n";
  for (std::size_t m = 0; m < spectrum.weights.size(); ++m) {
    if (spectrum.weights[m] != 0.0) out << m << ',' << format_number(spectrum.weights[m], 17) << '\n';
  }
}

void write_curve_csv(std::ostream& out, const StabilityCurve& curve) {
  const bool mc = curve.provenance == Provenance::MonteCarlo;
  out << (mc ? "t,K,stderr\n" : "t,K\n");
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << format_number(curve.grid[i]) << ',' << format_number(curve.values[i]);
    if (mc) out << ',' << format_number(curve.stderrs.at(i));
    out << '\n';
  }
}

}  // namespace lshlab
