#include "lshlab/binomial.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lshlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(n!) - log(sqrt(2 pi n) (n/e)^n)
double stirling_error(double n) {
  constexpr double s0 = 1.0 / 12;
  constexpr double s1 = 1.0 / 360;
  constexpr double s2 = 1.0 / 1260;
  constexpr double s3 = 1.0 / 1680;
  constexpr double s4 = 1.0 / 1188;
  if (n <= 15.0) {
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * std::log(2.0 * std::numbers::pi);
  }
  const double nn = n * n;
  if (n > 500) return (s0 - s1 / nn) / n;
  if (n > 80) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x log(x/np) + np - x, with a series when x is close to np.
double deviance(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / np) + np - x;
}

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial probability must lie in [0, 1]");
}

std::uint64_t mode_of(std::uint64_t n, double p) {
  const double m = std::floor((static_cast<double>(n) + 1.0) * p);
  if (m <= 0) return 0;
  if (m >= static_cast<double>(n)) return n;
  return static_cast<std::uint64_t>(m);
}

// log of sum_{j in [from, to]} pmf(j), stepping away from `from`, which must be
// at or beyond the mode so that terms decrease monotonically.
double log_sum_from(std::uint64_t n, double p, std::uint64_t from, std::uint64_t to, int step) {
  const double first = binomial_log_pmf(n, p, from);
  if (first == kNegInf) return kNegInf;
  double acc = 1.0;
  std::uint64_t j = from;
  while (j != to) {
    j = step > 0 ? j + 1 : j - 1;
    const double rel = binomial_log_pmf(n, p, j) - first;
    const double term = std::exp(rel);
    acc += term;
    if (term < acc * 1e-18) break;
  }
  return first + std::log(acc);
}

}  // namespace

double binomial_log_pmf(std::uint64_t n, double p, std::uint64_t k) {
  check_p(p);
  if (k > n) return kNegInf;
  const double q = 1.0 - p;
  if (p == 0.0) return k == 0 ? 0.0 : kNegInf;
  if (p == 1.0) return k == n ? 0.0 : kNegInf;
  const auto nd = static_cast<double>(n);
  const auto x = static_cast<double>(k);
  if (k == 0) return nd * std::log1p(-p);
  if (k == n) return nd * std::log(p);
  const double lc = stirling_error(nd) - stirling_error(x) - stirling_error(nd - x) - deviance(x, nd * p) -
                    deviance(nd - x, nd * q);
  const double lf = std::log(2.0 * std::numbers::pi) + std::log(x) + std::log1p(-x / nd);
  return lc - 0.5 * lf;
}

double binomial_log_tail_ge(std::uint64_t n, double p, std::uint64_t k) {
  check_p(p);
  if (k == 0) return 0.0;
  if (k > n) return kNegInf;
  const auto m = mode_of(n, p);
  if (k > m) return log_sum_from(n, p, k, n, +1);
  const double below = binomial_log_tail_le(n, p, k - 1);
  return std::log1p(-std::exp(below));
}

double binomial_log_tail_le(std::uint64_t n, double p, std::uint64_t k) {
  check_p(p);
  if (k >= n) return 0.0;
  const auto m = mode_of(n, p);
  if (k < m) return log_sum_from(n, p, k, 0, -1);
  const double above = binomial_log_tail_ge(n, p, k + 1);
  return std::log1p(-std::exp(above));
}

double binomial_tail_above(std::uint64_t n, double p, double x) {
  if (x < 0) return 1.0;
  const double k = std::floor(x) + 1.0;
  if (k > static_cast<double>(n)) return 0.0;
  return std::exp(binomial_log_tail_ge(n, p, static_cast<std::uint64_t>(k)));
}

double binomial_tail_below(std::uint64_t n, double p, double x) {
  const double k = std::ceil(x) - 1.0;
  if (k < 0) return 0.0;
  if (k >= static_cast<double>(n)) return 1.0;
  return std::exp(binomial_log_tail_le(n, p, static_cast<std::uint64_t>(k)));
}

}  // namespace lshlab
