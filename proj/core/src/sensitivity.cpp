#include "lshlab/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lshlab/parallel.hpp"

namespace lshlab {

namespace {

// Support weights rescaled to integers over a common denominator, with the
// label table of every atom, so per-pair collision mass is an exact integer sum.
struct ScaledSupport {
  std::int64_t denominator = 1;
  std::vector<std::int64_t> weights;
  std::vector<HashFunction> functions;
  std::vector<std::vector<Label>> tables;  // filled by tabulate()

  void tabulate() {
    tables.reserve(functions.size());
    for (const auto& f : functions) tables.push_back(f.label_table());
  }
};

ScaledSupport scale_support(const HashFamily& family) {
  const auto support = family.support();
  ScaledSupport s;
  for (const auto& f : support) {
    const auto g = std::gcd(s.denominator, f.weight.denominator());
    std::int64_t l = 0;
    if (__builtin_mul_overflow(s.denominator / g, f.weight.denominator(), &l)) {
      throw std::overflow_error("support weights have no 64-bit common denominator");
    }
    s.denominator = l;
  }
  s.weights.reserve(support.size());
  s.functions.reserve(support.size());
  for (const auto& f : support) {
    s.weights.push_back(f.weight.numerator() * (s.denominator / f.weight.denominator()));
    s.functions.push_back(f.fn);
  }
  return s;
}

std::int64_t collision_mass(const ScaledSupport& s, std::size_t x, std::size_t y) {
  std::int64_t mass = 0;
  for (std::size_t i = 0; i < s.weights.size(); ++i) {
    if (s.tables[i][x] == s.tables[i][y]) mass += s.weights[i];
  }
  return mass;
}

void require_exact_dim(const HashFamily& family) {
  if (family.dim() > kMaxExactDim) {
    throw std::invalid_argument("exact enumeration requires d <= " + std::to_string(kMaxExactDim) + " (got d=" +
                                std::to_string(family.dim()) + "); use Monte Carlo estimation instead");
  }
}

struct Extremes {
  std::int64_t near_min = std::numeric_limits<std::int64_t>::max();
  std::int64_t far_max = -1;
};

// Scans all unordered pairs x < y, classifying each with `near`/`far`.
template <class Classify>
Extremes scan_pairs(const ScaledSupport& s, std::size_t dim, Classify classify) {
  const std::size_t n = std::size_t{1} << dim;
  const std::size_t chunks = std::min<std::size_t>(n, 64);
  std::vector<Extremes> partial(chunks);
  parallel_chunks(chunks, [&](std::size_t c) {
    Extremes e;
    for (std::size_t x = c; x < n; x += chunks) {
      for (std::size_t y = x + 1; y < n; ++y) {
        const auto cls = classify(x, y);
        if (cls == 0) continue;
        const auto m = collision_mass(s, x, y);
        if (cls == 1) e.near_min = std::min(e.near_min, m);
        if (cls == 2) e.far_max = std::max(e.far_max, m);
      }
    }
    partial[c] = e;
  });
  Extremes total;
  for (const auto& e : partial) {
    total.near_min = std::min(total.near_min, e.near_min);
    total.far_max = std::max(total.far_max, e.far_max);
  }
  return total;
}

}  // namespace

std::string to_string(DistanceKind kind) { return kind == DistanceKind::Hamming ? "hamming" : "jaccard"; }

std::string to_string(RhoStatus status) {
  switch (status) {
    case RhoStatus::Defined: return "defined";
    case RhoStatus::TrivialRegime: return "undefined (trivial regime: q = 0)";
    case RhoStatus::PerfectNear: return "undefined (p = 1)";
    case RhoStatus::NotSensitive: return "undefined (q >= p: not sensitive)";
  }
  return "unknown";
}

SensitivityProfile make_profile(DistanceKind kind, double r, double cr, double p, double q) {
  SensitivityProfile prof;
  prof.kind = kind;
  prof.r = r;
  prof.cr = cr;
  prof.p = p;
  prof.q = q;
  if (q <= 0.0) {
    prof.status = RhoStatus::TrivialRegime;
  } else if (q >= p) {
    prof.status = RhoStatus::NotSensitive;
  } else if (p >= 1.0) {
    prof.status = RhoStatus::PerfectNear;
  } else {
    prof.status = RhoStatus::Defined;
    prof.rho = std::log(p) / std::log(q);
  }
  return prof;
}

SensitivityProfile make_profile(DistanceKind kind, double r, double cr, Probability p, Probability q) {
  auto prof = make_profile(kind, r, cr, to_double(p), to_double(q));
  if (p == Probability(1) && q > Probability(0) && q < p) prof.status = RhoStatus::PerfectNear;
  prof.p_exact = p;
  prof.q_exact = q;
  return prof;
}

SensitivityProfile bit_sampling_profile(std::size_t d, double r, double c) {
  if (d == 0) throw std::invalid_argument("bit_sampling_profile: d must be >= 1");
  if (!(r > 0)) throw std::invalid_argument("bit_sampling_profile: r must be positive");
  if (!(c > 1)) throw std::invalid_argument("bit_sampling_profile: c must exceed 1");
  const double cr = c * r;
  const auto dd = static_cast<long double>(d);
  if (cr >= static_cast<double>(d)) throw std::invalid_argument("bit_sampling_profile: degenerate q (cr >= d)");
  SensitivityProfile prof;
  prof.kind = DistanceKind::Hamming;
  prof.r = r;
  prof.cr = cr;
  prof.p = static_cast<double>(1.0L - r / dd);
  prof.q = static_cast<double>(1.0L - cr / dd);
  prof.status = RhoStatus::Defined;
  prof.rho = static_cast<double>(std::log1p(-r / dd) / std::log1p(-cr / dd));
  if (r == std::floor(r) && cr == std::floor(cr)) {
    const auto di = static_cast<std::int64_t>(d);
    prof.p_exact = Probability(di - static_cast<std::int64_t>(r), di);
    prof.q_exact = Probability(di - static_cast<std::int64_t>(cr), di);
  }
  return prof;
}

Probability collision_probability(const HashFamily& family, const Point& x, const Point& y) {
  if (x.dim() != family.dim() || y.dim() != family.dim()) {
    throw std::invalid_argument("collision_probability: dimension mismatch");
  }
  Probability total(0);
  for (const auto& f : family.support()) {
    if (f.fn(x) == f.fn(y)) total += f.weight;
  }
  return total;
}

SensitivityProfile exact_sensitivity(const HashFamily& family, std::size_t r, std::size_t cr) {
  require_exact_dim(family);
  const std::size_t d = family.dim();
  if (r < 1 || r >= cr) throw std::invalid_argument("exact_sensitivity requires 1 <= r < cr");
  if (cr > d) throw std::invalid_argument("exact_sensitivity: no pair at distance >= cr when cr > d");
  auto s = scale_support(family);

  Extremes e;
  if (family.coordinate_symmetric()) {
    // Representative pair per distance class: 0 and the first j coordinates set.
    const Point origin(d);
    for (std::size_t j = 1; j <= d; ++j) {
      if (j > r && j < cr) continue;
      Point y(d);
      for (std::size_t i = 0; i < j; ++i) y.set(i, true);
      std::int64_t m = 0;
      for (std::size_t i = 0; i < s.functions.size(); ++i) {
        if (s.functions[i](origin) == s.functions[i](y)) m += s.weights[i];
      }
      if (j <= r) e.near_min = std::min(e.near_min, m);
      if (j >= cr) e.far_max = std::max(e.far_max, m);
    }
  } else {
    s.tabulate();
    e = scan_pairs(s, d, [&](std::size_t x, std::size_t y) -> int {
      const auto dist = static_cast<std::size_t>(__builtin_popcountll(x ^ y));
      if (dist <= r) return 1;
      if (dist >= cr) return 2;
      return 0;
    });
  }
  return make_profile(DistanceKind::Hamming, static_cast<double>(r), static_cast<double>(cr),
                      Probability(e.near_min, s.denominator), Probability(e.far_max, s.denominator));
}

SensitivityProfile exact_jaccard_sensitivity(const HashFamily& family, double r, double cr) {
  require_exact_dim(family);
  if (!(r > 0) || !(r < cr) || cr > 1.0) {
    throw std::invalid_argument("exact_jaccard_sensitivity requires 0 < r < cr <= 1");
  }
  const std::size_t d = family.dim();
  auto s = scale_support(family);
  s.tabulate();
  constexpr double kTol = 1e-12;
  auto e = scan_pairs(s, d, [&](std::size_t x, std::size_t y) -> int {
    const auto inter = static_cast<double>(__builtin_popcountll(x & y));
    const auto uni = static_cast<double>(__builtin_popcountll(x | y));
    const double dist = 1.0 - inter / uni;  // x != y, so the union is nonempty
    if (dist <= r + kTol) return 1;
    if (dist >= cr - kTol) return 2;
    return 0;
  });
  if (e.near_min == std::numeric_limits<std::int64_t>::max() || e.far_max < 0) {
    throw std::invalid_argument("exact_jaccard_sensitivity: a distance class is empty at this d");
  }
  return make_profile(DistanceKind::Jaccard, r, cr, Probability(e.near_min, s.denominator),
                      Probability(e.far_max, s.denominator));
}

}  // namespace lshlab
