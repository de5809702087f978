#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lshlab/rng.hpp"
#include "lshlab_tools/commands.hpp"

namespace lshlab::cli {

namespace {

struct Output {
  std::string path;
  std::string format = "csv";
};

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.path, "Output file (default: stdout)");
  cmd->add_option("--format", out.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl", "json-lines"}));
}

void emit(const Table& table, const Output& o, std::ostream& out) {
  const auto format = parse_format(o.format);
  if (o.path.empty()) {
    table.write(out, format);
    return;
  }
  std::ofstream file(o.path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + o.path);
  table.write(file, format);
  if (!file) throw std::runtime_error("write failed: " + o.path);
}

std::vector<double> make_grid(const std::vector<double>& listed, std::optional<double> lo, std::optional<double> hi,
                              std::size_t steps) {
  if (!listed.empty()) return listed;
  if (!lo || !hi) return {};
  if (steps < 2 || !(*lo < *hi)) throw UsageError("--t-min must be below --t-max and --t-steps at least 2");
  std::vector<double> grid(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    grid[i] = i + 1 == steps ? *hi : *lo + (*hi - *lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return grid;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"lshlab: locality-sensitive hashing bounds, spectra and indexes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lshlab 0.1.0");

  std::uint64_t seed = kDefaultSeed;
  const auto add_seed = [&](CLI::App* cmd) { cmd->add_option("--seed", seed, "Random seed"); };

  // bounds
  BoundsOptions bo;
  Output bounds_out;
  auto* bounds = app.add_subcommand("bounds", "Table of exponent bounds over a grid of c");
  bounds->add_option("--c-min", bo.c_min, "Smallest c");
  bounds->add_option("--c-max", bo.c_max, "Largest c");
  bounds->add_option("--steps", bo.steps, "Grid points");
  bounds->add_option("--d", bo.d, "Dimension");
  bounds->add_option("--q", bo.q, "Far collision probability");
  bounds->add_option("--K", bo.K, "Constant in the main lower bound");
  bounds->add_option("--s", bo.s_list, "l_s exponents")->delimiter(',');
  add_output(bounds, bounds_out);

  // ledger
  LedgerOptions lo;
  double ledger_delta = 0;
  Output ledger_out;
  auto* ledger = app.add_subcommand("ledger", "Chernoff error ledger behind the main lower bound");
  ledger->add_option("--c", lo.c, "Approximation factor");
  ledger->add_option("--d", lo.d, "Dimension");
  ledger->add_option("--q", lo.q, "Far collision probability");
  ledger->add_option("--K1", lo.K1, "Constant in the choice of Delta");
  auto* ledger_delta_opt = ledger->add_option("--Delta", ledger_delta, "Use this Delta instead of the default choice");
  add_output(ledger, ledger_out);

  // stability
  StabilityOptions so;
  std::vector<double> t_list;
  std::optional<double> t_min, t_max;
  std::size_t t_steps = 21;
  std::string mode = "exact";
  Output stab_out;
  auto* stab = app.add_subcommand("stability", "Noise-stability curve K(t) with a log-convexity certificate");
  stab->add_option("--family", so.family, "Descriptor file or spec (bit-sampling:D, minhash:D, trivial:D:R, constant:D, ...^K)")
      ->required();
  stab->add_option("--t", t_list, "Comma-separated t values")->delimiter(',');
  stab->add_option("--t-min", t_min, "Grid start");
  stab->add_option("--t-max", t_max, "Grid end");
  stab->add_option("--t-steps", t_steps, "Grid points");
  stab->add_option("--mode", mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  stab->add_option("--samples", so.samples, "Monte Carlo samples per grid point");
  add_seed(stab);
  add_output(stab, stab_out);

  // sensitivity
  SensitivityOptions sens_o;
  std::optional<double> sens_c;
  bool sens_cr_set = false;
  Output sens_out;
  auto* sens = app.add_subcommand("sensitivity", "Exact (r, cr, p, q) sensitivity by enumeration");
  sens->add_option("--family", sens_o.family, "Descriptor file or spec")->required();
  sens->add_option("--r", sens_o.r, "Near radius")->required();
  auto* cr_opt = sens->add_option("--cr", sens_o.cr, "Far radius");
  sens->add_option("--c", sens_c, "Approximation factor (cr = c r)");
  sens->add_flag("--jaccard", sens_o.jaccard, "Jaccard distance on subsets instead of Hamming");
  add_seed(sens);
  add_output(sens, sens_out);

  // index
  auto* index = app.add_subcommand("index", "Build, query and test the near-neighbor index");
  index->require_subcommand(1);
  IndexBuildOptions ib;
  std::optional<double> ib_cr;
  Output ib_out;
  auto* build = index->add_subcommand("build", "Build an index from a dataset");
  build->add_option("--data", ib.data, "Dataset file (text or binary)")->required();
  build->add_option("--family", ib.family, "Family spec or descriptor file");
  build->add_option("--r", ib.r, "Near radius")->required();
  build->add_option("--c", ib.c, "Approximation factor");
  build->add_option("--cr", ib_cr, "Far radius (overrides --c)");
  build->add_option("--k", ib.k, "Concatenation length");
  build->add_option("--L", ib.L, "Number of tables");
  build->add_option("--delta", ib.delta, "Target failure probability");
  build->add_option("--index", ib.out, "Index file to write")->required();
  add_seed(build);
  add_output(build, ib_out);

  IndexQueryOptions iq;
  Output iq_out;
  auto* query = index->add_subcommand("query", "Query a saved index");
  query->add_option("--index", iq.index, "Index file")->required();
  query->add_option("--queries", iq.queries, "Query dataset")->required();
  add_output(query, iq_out);

  IndexExperimentOptions ie;
  Output ie_out;
  auto* exp = index->add_subcommand("experiment", "Planted near-neighbor experiment");
  exp->add_option("--n", ie.n, "Points");
  exp->add_option("--d", ie.d, "Dimension");
  exp->add_option("--r", ie.r, "Near radius");
  exp->add_option("--c", ie.c, "Approximation factor");
  exp->add_option("--delta", ie.delta, "Target failure probability");
  exp->add_option("--queries", ie.queries, "Number of queries");
  exp->add_flag("--at-radius", ie.at_radius, "Plant every neighbor at distance exactly r");
  add_seed(exp);
  add_output(exp, ie_out);

  // generate
  GenerateOptions go;
  auto* gen = app.add_subcommand("generate", "Write a uniform random dataset");
  gen->add_option("--n", go.n, "Points");
  gen->add_option("--d", go.d, "Dimension");
  gen->add_flag("--binary", go.binary, "Binary format");
  gen->add_option("--out", go.out, "Dataset file")->required();
  add_seed(gen);

  // jaccard
  JaccardOptions jo;
  Output jac_out;
  auto* jac = app.add_subcommand("jaccard", "Jaccard distance of correlated random sets");
  jac->add_option("--d", jo.d, "Dimension");
  jac->add_option("--t", jo.t_list, "Comma-separated t values in [0, 1]")->delimiter(',');
  jac->add_option("--samples", jo.samples, "Samples per t");
  add_seed(jac);
  add_output(jac, jac_out);

  // verify
  VerifyOptions vo;
  Output ver_out;
  auto* ver = app.add_subcommand("verify", "Run invariant suites");
  ver->add_option("suite", vo.suite, "all, parseval, oracle, log-convexity, sandwich, chernoff, exactness, powering, index");
  ver->add_option("--inject-fault", vo.inject_fault, "Test hook: corrupt a component (spectrum)")->group("");
  add_seed(ver);
  add_output(ver, ver_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (bounds->parsed()) {
      emit(cmd_bounds(bo), bounds_out, out);
    } else if (ledger->parsed()) {
      if (ledger_delta_opt->count() > 0) lo.Delta = ledger_delta;
      emit(cmd_ledger(lo), ledger_out, out);
    } else if (stab->parsed()) {
      so.t_grid = make_grid(t_list, t_min, t_max, t_steps);
      so.monte_carlo = mode == "mc";
      so.seed = seed;
      const auto res = cmd_stability(so);
      emit(res.curve, stab_out, out);
      (stab_out.path.empty() ? err : out) << res.certificate << '\n';
      return res.passed ? kOk : kVerifyFailed;
    } else if (sens->parsed()) {
      sens_cr_set = cr_opt->count() > 0;
      if (sens_c && sens_cr_set) throw UsageError("give --cr or --c, not both");
      if (sens_c) sens_o.cr = *sens_c * sens_o.r;
      sens_o.seed = seed;
      emit(cmd_sensitivity(sens_o), sens_out, out);
    } else if (build->parsed()) {
      if (ib_cr) ib.c = *ib_cr / ib.r;
      ib.seed = seed;
      emit(cmd_index_build(ib), ib_out, out);
    } else if (query->parsed()) {
      emit(cmd_index_query(iq), iq_out, out);
    } else if (exp->parsed()) {
      ie.seed = seed;
      emit(cmd_index_experiment(ie), ie_out, out);
    } else if (gen->parsed()) {
      go.seed = seed;
      cmd_generate(go);
    } else if (jac->parsed()) {
      jo.seed = seed;
      emit(cmd_jaccard(jo), jac_out, out);
    } else if (ver->parsed()) {
      vo.seed = seed;
      const auto res = cmd_verify(vo);
      emit(res.report, ver_out, out);
      (ver_out.path.empty() ? err : out) << (res.failures == 0 ? "PASS" : "FAIL") << ": " << res.report.rows.size()
                                         << " checks, " << res.failures << " failed\n";
      return res.failures == 0 ? kOk : kVerifyFailed;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace lshlab::cli
