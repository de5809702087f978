#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace lshlab {

/// Upper limit 1/c of the bit-sampling exponent.
double im_upper(double c);
/// rho of bit sampling at radius r in {0,1}^d: ln(1/(1 - r/d)) / ln(1/(1 - cr/d)).
double im_rho(double d, double r, double c);

/// (e^{1/c} - 1)/(e^{1/c} + 1), the earlier lower bound. Requires c >= 1.
double mnp_lower(double c);

/// (ln(2/q)/d) ln(d/ln(2/q)). Requires 0 < q < 1 and d/ln(2/q) >= 2.
double lambda(double d, double q);

/// max(0, 1/c - K lambda(d,q)^{1/3}).
double main_lower(double c, double d, double q, double K = 1.0);
/// The subtracted term K lambda(d,q)^{1/3}.
double main_correction(double d, double q, double K = 1.0);

/// Hamming bounds carried to l_s by the substitution c <- c^s.
double ls_transfer_c(double c, double s);
double im_upper_ls(double c, double s);
double mnp_lower_ls(double c, double s);
double main_lower_ls(double c, double s, double d, double q, double K = 1.0);

struct ChernoffLedger {
  double c = 0, d = 0, q = 0;
  /// q after powering down to at most 1/e, and the power used (1 if none).
  double q_effective = 0;
  std::size_t q_power = 1;
  double Delta = 0;
  double epsilon = 0;  ///< .005 Delta
  double tau = 0;      ///< epsilon / c: near radius as a fraction of d
  double t = 0;        ///< 2 epsilon (1 + Delta/2)
  double c_prime = 0;  ///< c (1 + Delta)
  double eta1 = 0;     ///< (1 - e^{-t/c'})/2
  double delta1 = 0;   ///< epsilon/(c eta1) - 1
  double e1_chernoff = 0;  ///< exp(-delta1^2/(2 + delta1) eta1 d)
  double e1_bound = 0;     ///< exp(-Delta^3 d/(2000 c))
  double eta2 = 0;     ///< (1 - e^{-t})/2
  double delta2 = 0;   ///< 1 - epsilon/eta2
  double e2_chernoff = 0;  ///< exp(-delta2^2/2 eta2 d)
  double e2_bound = 0;     ///< exp(-Delta^3 d/2000)
  double e_total = 0;  ///< Delta/c + 1.01 e1/ln(1/q) + e2/(q ln(1/q)), with q = q_effective
  double near_radius = 0;  ///< epsilon d / c
  double far_radius = 0;   ///< epsilon d
};

/// Requires c > 1, d >= 1, 0 < q < 1 and 0 < Delta < .005.
ChernoffLedger chernoff_ledger(double c, double d, double q, double Delta);

struct DeltaChoice {
  double Delta = 0;
  double lambda = 0;
  bool trivialized = false;  ///< Delta >= .005: the bound is vacuous at this (c, d, q)
};

/// Delta = K1 c^{1/3} lambda(d,q)^{1/3}.
DeltaChoice delta_choice(double c, double d, double q, double K1 = 1.0);

struct Exponents {
  std::size_t k = 1;
  double rho = 0;
  double space_exp = 0;
  double time_exp = 0;
};

/// With p = n^{-p_exp}, q = n^{-q_exp}: k = ceil(1/q_exp), rho = p_exp/q_exp,
/// space 1 + k p_exp, time k p_exp. Requires 0 < p_exp < q_exp <= 1.
Exponents effective_exponents(double p_exp, double q_exp);
/// Without powering (q already below 1/n): k = 1, space 1 + p_exp, time p_exp.
Exponents direct_exponents(double p_exp, double q_exp);

struct BoundRow {
  double c = 0;
  double im = 0;    ///< 1/c
  double ai = 0;    ///< 1/c^2
  double diim = 0;  ///< max(1/c^s, 1/c)
  double mnp = 0;
  double main = 0;
};

std::vector<BoundRow> bound_table(std::span<const double> c_grid, double d, double q, double s = 1.0, double K = 1.0);
/// Header c,im,ai,diim,mnp,main; 12 significant digits.
void write_bound_csv(std::ostream& out, std::span<const BoundRow> rows);

/// Textbook Chernoff forms for Binomial(n, mu/n):
/// Pr[X > (1 + delta) mu] < exp(-delta^2 mu/(2 + delta)),
/// Pr[X < (1 - delta) mu] < exp(-delta^2 mu/2).
double chernoff_upper(double mu, double delta);
double chernoff_lower(double mu, double delta);

}  // namespace lshlab
