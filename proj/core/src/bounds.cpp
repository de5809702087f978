#include "lshlab/bounds.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "lshlab/numeric.hpp"

namespace lshlab {

namespace {

using ld = long double;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

double im_upper(double c) {
  require(c > 1.0, "im_upper requires c > 1");
  return 1.0 / c;
}

double im_rho(double d, double r, double c) {
  require(c > 1.0, "im_rho requires c > 1");
  require(r > 0.0, "im_rho requires r > 0");
  require(c * r < d, "im_rho: degenerate q (cr >= d)");
  const ld near = std::log1p(-static_cast<ld>(r) / d);
  const ld far = std::log1p(-static_cast<ld>(c) * r / d);
  return static_cast<double>(near / far);
}

double mnp_lower(double c) {
  require(c >= 1.0, "mnp_lower requires c >= 1");
  return std::tanh(0.5 / c);
}

double lambda(double d, double q) {
  require(q > 0.0 && q < 1.0, "lambda requires 0 < q < 1");
  const ld l = std::log(2.0L / q);
  const ld ratio = d / l;
  require(ratio >= 2.0L * (1 - 1e-12L), "lambda requires d/ln(2/q) >= 2");
  return static_cast<double>(std::log(ratio) / ratio);
}

double main_correction(double d, double q, double K) {
  require(K > 0.0, "K must be positive");
  return K * std::cbrt(lambda(d, q));
}

double main_lower(double c, double d, double q, double K) {
  require(c > 1.0, "main_lower requires c > 1");
  return std::max(0.0, 1.0 / c - main_correction(d, q, K));
}

double ls_transfer_c(double c, double s) {
  require(s > 0.0, "ls transfer requires s > 0");
  return std::pow(c, s);
}

double im_upper_ls(double c, double s) { return im_upper(ls_transfer_c(c, s)); }
double mnp_lower_ls(double c, double s) { return mnp_lower(ls_transfer_c(c, s)); }
double main_lower_ls(double c, double s, double d, double q, double K) {
  return main_lower(ls_transfer_c(c, s), d, q, K);
}

ChernoffLedger chernoff_ledger(double c, double d, double q, double Delta) {
  require(c > 1.0, "chernoff_ledger requires c > 1");
  require(d >= 1.0, "chernoff_ledger requires d >= 1");
  require(q > 0.0 && q < 1.0, "chernoff_ledger requires 0 < q < 1");
  require(Delta > 0.0, "chernoff_ledger requires Delta > 0");
  if (!(Delta < 0.005)) throw std::domain_error("Delta >= .005: use the trivialized branch");

  ChernoffLedger g;
  g.c = c;
  g.d = d;
  g.q = q;
  g.q_effective = q;
  const double inv_e = std::exp(-1.0);
  while (g.q_effective > inv_e) {
    g.q_effective *= q;
    ++g.q_power;
  }
  g.Delta = Delta;
  g.epsilon = 0.005 * Delta;
  g.tau = g.epsilon / c;
  g.t = 2.0 * g.epsilon * (1.0 + Delta / 2.0);
  g.c_prime = c * (1.0 + Delta);
  g.eta1 = -std::expm1(-g.t / g.c_prime) / 2.0;
  g.delta1 = g.epsilon / (c * g.eta1) - 1.0;
  g.e1_chernoff = chernoff_upper(g.eta1 * d, g.delta1);
  g.e1_bound = std::exp(-Delta * Delta * Delta * d / (2000.0 * c));
  g.eta2 = -std::expm1(-g.t) / 2.0;
  g.delta2 = 1.0 - g.epsilon / g.eta2;
  g.e2_chernoff = chernoff_lower(g.eta2 * d, g.delta2);
  g.e2_bound = std::exp(-Delta * Delta * Delta * d / 2000.0);
  const double lq = -std::log(g.q_effective);
  g.e_total = Delta / c + 1.01 * g.e1_bound / lq + g.e2_bound / (g.q_effective * lq);
  g.near_radius = g.epsilon * d / c;
  g.far_radius = g.epsilon * d;
  return g;
}

DeltaChoice delta_choice(double c, double d, double q, double K1) {
  require(c > 1.0, "delta_choice requires c > 1");
  require(K1 > 0.0, "K1 must be positive");
  DeltaChoice ch;
  ch.lambda = lambda(d, q);
  ch.Delta = K1 * std::cbrt(c * ch.lambda);
  ch.trivialized = ch.Delta >= 0.005;
  return ch;
}

Exponents effective_exponents(double p_exp, double q_exp) {
  require(p_exp > 0.0 && p_exp < q_exp, "effective_exponents requires 0 < p_exp < q_exp");
  if (q_exp > 1.0) throw std::domain_error("q below 1/n: reduction degenerates");
  Exponents e;
  const double inv = 1.0 / q_exp;
  const double nearest = std::round(inv);
  e.k = static_cast<std::size_t>(std::fabs(inv - nearest) <= 1e-12 * inv ? nearest : std::ceil(inv));
  e.rho = p_exp / q_exp;
  e.time_exp = static_cast<double>(e.k) * p_exp;
  e.space_exp = 1.0 + e.time_exp;
  return e;
}

Exponents direct_exponents(double p_exp, double q_exp) {
  require(p_exp > 0.0 && p_exp < q_exp, "direct_exponents requires 0 < p_exp < q_exp");
  Exponents e;
  e.k = 1;
  e.rho = p_exp / q_exp;
  e.time_exp = p_exp;
  e.space_exp = 1.0 + p_exp;
  return e;
}

std::vector<BoundRow> bound_table(std::span<const double> c_grid, double d, double q, double s, double K) {
  require(s > 0.0, "bound_table requires s > 0");
  std::vector<BoundRow> rows;
  rows.reserve(c_grid.size());
  for (double c : c_grid) {
    require(c >= 1.0, "bound_table requires c >= 1");
    BoundRow row;
    row.c = c;
    row.im = 1.0 / c;
    row.ai = 1.0 / (c * c);
    row.diim = std::max(1.0 / std::pow(c, s), 1.0 / c);
    row.mnp = mnp_lower(c);
    row.main = std::max(0.0, 1.0 / c - main_correction(d, q, K));
    rows.push_back(row);
  }
  return rows;
}

void write_bound_csv(std::ostream& out, std::span<const BoundRow> rows) {
  out << "c,im,ai,diim,mnp,main\n";
  for (const auto& r : rows) {
    out << format_number(r.c) << ',' << format_number(r.im) << ',' << format_number(r.ai) << ','
        << format_number(r.diim) << ',' << format_number(r.mnp) << ',' << format_number(r.main) << '\n';
  }
}

double chernoff_upper(double mu, double delta) {
  require(mu >= 0.0 && delta > 0.0, "chernoff_upper requires mu >= 0, delta > 0");
  return std::exp(-delta * delta * mu / (2.0 + delta));
}

double chernoff_lower(double mu, double delta) {
  require(mu >= 0.0 && delta > 0.0 && delta < 1.0, "chernoff_lower requires mu >= 0, 0 < delta < 1");
  return std::exp(-delta * delta * mu / 2.0);
}

}  // namespace lshlab
