#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lshlab/binomial.hpp"
#include "lshlab/bounds.hpp"
#include "lshlab/sampling.hpp"

using namespace lshlab;

TEST(ImRho, Values) {
  EXPECT_EQ(im_upper(2.0), 0.5);
  EXPECT_NEAR(im_rho(100, 10, 2), 0.4721647344828, 1e-12);
  EXPECT_NEAR(im_rho(1e6, 10, 1.1), 1 / 1.1, 1e-4);
  EXPECT_NEAR(im_rho(1e6, 10, 1.1), 0.90909045454, 1e-10);
  for (double c : {1.1, 2.0, 7.0}) {
    for (double r : {1.0, 5.0, 20.0}) EXPECT_LE(im_rho(1000, r, c), im_upper(c));
  }
}

TEST(Mnp, Values) {
  EXPECT_NEAR(mnp_lower(1.0), 0.46211715726, 1e-10);
  EXPECT_NEAR(mnp_lower(2.0), 0.24491866240, 1e-10);
  EXPECT_NEAR(1000 * mnp_lower(1000), 0.49999995833, 1e-10);
  double prev = 0;
  for (double c = 1.0; c <= 100.0; c += 0.5) {
    const double v = c * mnp_lower(c);
    EXPECT_GT(v, prev);
    prev = v;
    if (c > 1.0) EXPECT_LT(mnp_lower(c), im_upper(c));
  }
  EXPECT_THROW(mnp_lower(0.5), std::invalid_argument);
}

TEST(Lambda, ValuesAndMonotonicity) {
  EXPECT_NEAR(lambda(1000, 0.5), 0.0091233709585, 1e-12);
  EXPECT_NEAR(lambda(1e4, 0.5), 0.0012315431689, 1e-13);
  // lambda = ln(x)/x with x = d/ln(2/q): rising up to x = e, falling after.
  const double l = std::log(4.0);
  EXPECT_LT(lambda(2 * l, 0.5), lambda(2.5 * l, 0.5));
  double prev = INFINITY;
  for (double d = std::exp(1.0) * l; d <= 1e6; d *= 1.1) {
    const double v = lambda(d, 0.5);
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_THROW(lambda(2, 0.5), std::invalid_argument);
  EXPECT_NEAR(main_lower(2, 1e12, 0.5), 0.5, 1e-3);
  EXPECT_LE(main_lower(2, 1000, 0.5), 0.5);
  EXPECT_EQ(main_lower(2, 1000, 0.5, 100.0), 0.0);
}

TEST(LsTransfer, Substitution) {
  EXPECT_EQ(ls_transfer_c(3.0, 1.0), 3.0);
  EXPECT_DOUBLE_EQ(im_upper_ls(2.0, 2.0), 0.25);
  EXPECT_DOUBLE_EQ(mnp_lower_ls(2.0, 2.0), mnp_lower(4.0));
  EXPECT_THROW(ls_transfer_c(2.0, 0.0), std::invalid_argument);
}

TEST(Chernoff, LedgerExample) {
  const auto g = chernoff_ledger(2, 1e6, 0.5, 0.004);
  EXPECT_NEAR(g.e1_bound, 0.99998400013, 1e-11);
  EXPECT_NEAR(g.e2_bound, std::exp(-3.2e-5), 1e-15);
  EXPECT_EQ(g.q_power, 2u);
  EXPECT_DOUBLE_EQ(g.q_effective, 0.25);
  EXPECT_DOUBLE_EQ(g.epsilon, 0.00002);
  EXPECT_DOUBLE_EQ(g.tau, 0.00001);
  EXPECT_THROW(chernoff_ledger(2, 1e6, 0.5, 0.005), std::domain_error);
}

TEST(Chernoff, IntermediateInequalitiesOnGrid) {
  for (double c = 1.05; c <= 10.0; c += 0.35) {
    for (double Delta = 1e-5; Delta < 0.005; Delta += 0.00033) {
      const auto g = chernoff_ledger(c, 1e5, 0.2, Delta);
      EXPECT_GE(g.delta1, 0.498 * Delta);
      EXPECT_GE(g.eta1, 0.98 * g.epsilon / c);
      EXPECT_GE(g.delta2, 0.49 * Delta);
      EXPECT_GE(g.eta2, 0.99 * g.epsilon);
      EXPECT_LE(g.e1_chernoff, g.e1_bound);
      EXPECT_LE(g.e2_chernoff, g.e2_bound);
    }
  }
}

TEST(Chernoff, SmallDeltaLimit) {
  const auto g = chernoff_ledger(2, 100, 0.1, 1e-6);
  EXPECT_NEAR(g.e1_bound, 1.0, 1e-12);
  EXPECT_NEAR(g.e2_bound, 1.0, 1e-12);
  EXPECT_GT(g.e_total, 1.0);
}

TEST(Chernoff, BoundsDominateExactTails) {
  for (double d : {1e4, 1e6, 1e7}) {
    const auto g = chernoff_ledger(2, d, 0.1, 0.004);
    const auto n = static_cast<std::uint64_t>(d);
    EXPECT_LE(binomial_tail_above(n, g.eta1, g.near_radius), g.e1_chernoff);
    EXPECT_LE(binomial_tail_below(n, g.eta2, g.far_radius), g.e2_chernoff);
  }
}

TEST(DeltaChoice, Values) {
  const auto ch = delta_choice(2, 1e4, 0.5);
  EXPECT_NEAR(ch.Delta, 0.13504957188, 1e-10);
  EXPECT_TRUE(ch.trivialized);
  EXPECT_FALSE(delta_choice(2, 1e15, 0.5).trivialized);
  const auto tiny = delta_choice(2, 1000, std::pow(2.0, -100));
  EXPECT_NEAR(tiny.lambda, 0.18616125, 1e-7);
  EXPECT_TRUE(tiny.trivialized);
}

TEST(Exponents, RoundingExamples) {
  const auto e = effective_exponents(0.15, 0.3);
  EXPECT_EQ(e.k, 4u);
  EXPECT_DOUBLE_EQ(e.rho, 0.5);
  EXPECT_NEAR(e.space_exp, 1.6, 1e-15);
  EXPECT_NEAR(e.time_exp, 0.6, 1e-15);
  EXPECT_THROW(effective_exponents(0.5, 1.5), std::domain_error);
  const auto direct = direct_exponents(0.5, 1.5);
  EXPECT_DOUBLE_EQ(direct.space_exp, 1.5);
  EXPECT_DOUBLE_EQ(direct.time_exp, 0.5);
  EXPECT_NEAR(direct.rho, 1.0 / 3, 1e-15);
  const auto one = effective_exponents(0.3, 1.0);
  EXPECT_EQ(one.k, 1u);
  EXPECT_DOUBLE_EQ(one.space_exp, 1.3);
}

TEST(Exponents, PenaltyNonnegative) {
  for (double qe = 0.05; qe <= 1.0; qe += 0.0173) {
    for (double frac : {0.1, 0.5, 0.9}) {
      const auto e = effective_exponents(frac * qe, qe);
      EXPECT_GE(e.space_exp, 1 + e.rho - 1e-12);
      EXPECT_GE(e.time_exp, e.rho - 1e-12);
    }
  }
  const auto exact = effective_exponents(0.1, 0.25);
  EXPECT_NEAR(exact.time_exp, exact.rho, 1e-15);
}

TEST(BoundTable, RowsAndCsv) {
  const std::vector<double> grid{1.0, 2.0, 4.0};
  const auto rows = bound_table(grid, 1e6, 0.5, 2.0);
  EXPECT_EQ(rows[0].im, 1.0);
  EXPECT_EQ(rows[0].ai, 1.0);
  EXPECT_NEAR(rows[0].mnp, 0.462117157, 1e-9);
  EXPECT_EQ(rows[1].diim, 0.5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].im, rows[i - 1].im);
    EXPECT_LE(rows[i].mnp, rows[i - 1].mnp);
    EXPECT_LE(rows[i].main, rows[i - 1].main);
    EXPECT_LE(rows[i].main, rows[i].im);
  }
  std::ostringstream out;
  write_bound_csv(out, rows);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "c,im,ai,diim,mnp,main");
  EXPECT_NE(out.str().find(",0.46211715726,"), std::string::npos);
}
