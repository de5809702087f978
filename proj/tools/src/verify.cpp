#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "lshlab/ann_index.hpp"
#include "lshlab/binomial.hpp"
#include "lshlab/bounds.hpp"
#include "lshlab/numeric.hpp"
#include "lshlab/sampling.hpp"
#include "lshlab/sensitivity.hpp"
#include "lshlab/spectral.hpp"
#include "lshlab_tools/commands.hpp"

namespace lshlab::cli {

namespace {

struct Context {
  std::uint64_t seed;
  std::string fault;
  Table* report;
  std::size_t failures = 0;

  void check(const std::string& suite, const std::string& name, bool ok, const std::string& detail) {
    report->rows.push_back({suite, name, ok ? "PASS" : "FAIL", detail});
    if (!ok) ++failures;
  }
};

std::string num(double v) { return format_number(v); }

HashFunction random_table(std::size_t d, std::size_t labels, CounterRng& rng) {
  std::vector<Label> table(std::size_t{1} << d);
  for (auto& l : table) l = rng.below(labels);
  return HashFunction::table(d, std::move(table));
}

HashFamily random_family(std::size_t d, std::size_t size, std::size_t labels, CounterRng& rng) {
  std::vector<WeightedFunction> fns;
  for (std::size_t i = 0; i < size; ++i) {
    fns.push_back({random_table(d, labels, rng), Probability(1, static_cast<std::int64_t>(size))});
  }
  return explicit_family(d, std::move(fns));
}

// The spectra shared by the parseval and oracle suites; the fault hook
// perturbs the first one.
std::vector<std::pair<HashFunction, FourierSpectrum>> oracle_cases(Context& ctx) {
  CounterRng rng(ctx.seed, 0x0AC1E);
  std::vector<std::pair<HashFunction, FourierSpectrum>> cases;
  for (int i = 0; i < 20; ++i) {
    const std::size_t d = 4 + rng.below(7);
    auto h = random_table(d, 2 + rng.below(7), rng);
    auto spec = fourier_spectrum(h);
    cases.emplace_back(std::move(h), std::move(spec));
  }
  if (ctx.fault == "spectrum") cases.front().second.weights[0] += 0.25;
  return cases;
}

void suite_parseval(Context& ctx) {
  double worst = 0;
  for (const auto& [h, spec] : oracle_cases(ctx)) worst = std::max(worst, std::fabs(spec.total() - 1.0));
  ctx.check("parseval", "sum_of_weights", worst <= 1e-10, "max |sum w_S - 1| = " + num(worst));
}

void suite_oracle(Context& ctx) {
  double worst = 0;
  for (const auto& [h, spec] : oracle_cases(ctx)) {
    for (double rho : {0.0, 0.25, 0.5, 0.9, 1.0}) {
      worst = std::max(worst, std::fabs(stability(spec, rho) - brute_force_stability(h, rho)));
    }
  }
  ctx.check("oracle", "spectral_vs_bruteforce", worst <= 1e-9, "max abs diff = " + num(worst));
}

void suite_log_convexity(Context& ctx) {
  CounterRng rng(ctx.seed, 0x10C);
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.15 * i);
  std::size_t passed = 0;
  double worst_slack = -1;
  double worst_ratio_gap = INFINITY;
  const int families = 25;
  for (int i = 0; i < families; ++i) {
    const auto f = random_family(2 + rng.below(7), 1 + rng.below(4), 2 + rng.below(6), rng);
    const auto spec = family_spectrum(f);
    const auto cert = check_log_convexity(stability_curve(spec, grid));
    passed += cert.passed ? 1 : 0;
    worst_slack = std::max(worst_slack, cert.worst_slack);
    for (double c : {1.1, 2.0, 5.0}) {
      for (double t : {0.1, 0.5, 1.0}) {
        if (stability_deficit(spec, t) <= 0.0) continue;
        worst_ratio_gap = std::min(worst_ratio_gap, stability_ratio(spec, t, c) - 1.0 / c);
      }
    }
  }
  ctx.check("log-convexity", "midpoint_certificates", passed == families,
            std::to_string(passed) + "/" + std::to_string(families) + " passed; worst slack " + num(worst_slack));
  ctx.check("log-convexity", "stability_ratio_at_least_1/c", worst_ratio_gap >= -1e-9,
            "min ratio - 1/c = " + num(worst_ratio_gap));
}

void suite_sandwich(Context& ctx) {
  const auto bit = family_spectrum(bit_sampling_family(12));
  for (double u : {0.1, 0.3, 1.0}) {
    const auto rep = verify_sandwich(bit, 2, 4, u, 10.0 / 12, 8.0 / 12);
    ctx.check("sandwich", "bit-sampling:12 u=" + num(u), rep.passed,
              num(rep.lower) + " <= " + num(rep.k_value) + " <= " + num(rep.upper));
  }
  const auto triv = trivial_family(6, 1);
  const auto prof = exact_sensitivity(triv, 1, 2);
  const auto spec = family_spectrum(triv);
  for (double u : {0.1, 0.5}) {
    const auto rep = verify_sandwich(spec, 1, 2, u, prof.p, prof.q);
    ctx.check("sandwich", "trivial:6:1 u=" + num(u), rep.passed,
              num(rep.lower) + " <= " + num(rep.k_value) + " <= " + num(rep.upper));
  }
}

void suite_chernoff(Context& ctx) {
  std::size_t points = 0;
  std::size_t ok = 0;
  double worst = 0;
  for (double c : {1.5, 2.0, 3.0, 5.0, 10.0}) {
    for (double d : {1e4, 1e5, 1e6, 1e7, 1e8}) {
      for (double Delta : {0.001, 0.0045}) {
        const double q = points % 2 == 0 ? 0.1 : 0.3;
        const auto g = chernoff_ledger(c, d, q, Delta);
        const auto n = static_cast<std::uint64_t>(d);
        const double e1 = binomial_tail_above(n, g.eta1, g.near_radius);
        const double e2 = binomial_tail_below(n, g.eta2, g.far_radius);
        const bool good = e1 <= g.e1_chernoff && g.e1_chernoff <= g.e1_bound && e2 <= g.e2_chernoff &&
                          g.e2_chernoff <= g.e2_bound;
        worst = std::max({worst, e1 / g.e1_bound, e2 / g.e2_bound});
        ++points;
        ok += good ? 1 : 0;
      }
    }
  }
  ctx.check("chernoff", "exact_tails_below_bounds", ok == points,
            std::to_string(ok) + "/" + std::to_string(points) + " grid points; max exact/bound = " + num(worst));
}

void suite_exactness(Context& ctx) {
  std::size_t cases = 0;
  std::size_t ok = 0;
  for (std::size_t d = 3; d <= 10; ++d) {
    const auto f = bit_sampling_family(d);
    const auto di = static_cast<std::int64_t>(d);
    for (std::size_t r = 1; r < d; ++r) {
      for (std::size_t cr = r + 1; cr < d; ++cr) {
        const auto prof = exact_sensitivity(f, r, cr);
        ++cases;
        ok += *prof.p_exact == Probability(di - static_cast<std::int64_t>(r), di) &&
              *prof.q_exact == Probability(di - static_cast<std::int64_t>(cr), di);
      }
    }
  }
  ctx.check("exactness", "bit-sampling_closed_form", ok == cases, std::to_string(ok) + "/" + std::to_string(cases));
}

void suite_powering(Context& ctx) {
  std::size_t cases = 0;
  std::size_t ok = 0;
  for (std::size_t d = 3; d <= 8; ++d) {
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto prof = exact_sensitivity(power(bit_sampling_family(d), k), 1, 2);
      Probability p(1), q(1);
      for (std::size_t j = 0; j < k; ++j) {
        p *= Probability(static_cast<std::int64_t>(d) - 1, static_cast<std::int64_t>(d));
        q *= Probability(static_cast<std::int64_t>(d) - 2, static_cast<std::int64_t>(d));
      }
      ++cases;
      ok += *prof.p_exact == p && *prof.q_exact == q;
    }
  }
  ctx.check("powering", "p^k_q^k", ok == cases, std::to_string(ok) + "/" + std::to_string(cases));
}

void suite_index(Context& ctx) {
  ExperimentConfig cfg;
  cfg.n = 500;
  cfg.d = 64;
  cfg.r = 4;
  cfg.queries = 100;
  cfg.seed = ctx.seed;
  const auto rep = planted_experiment(cfg);
  ctx.check("index", "success_rate", rep.success_rate >= 1 - cfg.delta - 0.05, num(rep.success_rate));
  ctx.check("index", "answers_within_cr", rep.all_within_cr, rep.all_within_cr ? "all" : "violated");
  ctx.check("index", "candidate_cap", rep.max_candidates <= candidate_cap(rep.params) + 1,
            std::to_string(rep.max_candidates) + " <= " + std::to_string(candidate_cap(rep.params) + 1));
  ctx.check("index", "entries_equal_nL", rep.stats.entries == cfg.n * rep.params.L, std::to_string(rep.stats.entries));
}

const std::vector<std::pair<std::string, std::function<void(Context&)>>>& suites() {
  static const std::vector<std::pair<std::string, std::function<void(Context&)>>> all{
      {"parseval", suite_parseval},   {"oracle", suite_oracle},       {"log-convexity", suite_log_convexity},
      {"sandwich", suite_sandwich},   {"chernoff", suite_chernoff},   {"exactness", suite_exactness},
      {"powering", suite_powering},   {"index", suite_index},
  };
  return all;
}

}  // namespace

std::vector<std::string> verify_suites() {
  std::vector<std::string> names{"all"};
  for (const auto& [name, fn] : suites()) names.push_back(name);
  return names;
}

VerifyResult cmd_verify(const VerifyOptions& o) {
  if (!o.inject_fault.empty() && o.inject_fault != "spectrum") {
    throw UsageError("unknown fault '" + o.inject_fault + "' (expected spectrum)");
  }
  VerifyResult res;
  res.report.header = {"suite", "check", "status", "detail"};
  Context ctx{o.seed, o.inject_fault, &res.report};
  bool found = false;
  for (const auto& [name, fn] : suites()) {
    if (o.suite == "all" || o.suite == name) {
      fn(ctx);
      found = true;
    }
  }
  if (!found) throw UsageError("unknown suite '" + o.suite + "'");
  res.failures = ctx.failures;
  return res;
}

}  // namespace lshlab::cli
