#include "lshlab_tools/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "lshlab/ann_index.hpp"
#include "lshlab/binomial.hpp"
#include "lshlab/bounds.hpp"
#include "lshlab/dataset_io.hpp"
#include "lshlab/descriptor.hpp"
#include "lshlab/numeric.hpp"
#include "lshlab/sampling.hpp"
#include "lshlab/sensitivity.hpp"
#include "lshlab/spectral.hpp"

namespace lshlab::cli {

namespace {

std::string num(double v) { return format_number(v); }
std::string num(std::size_t v) { return std::to_string(v); }

std::optional<double> as_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  double v = 0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

void add(Table& t, std::string field, std::string value) { t.rows.push_back({std::move(field), std::move(value)}); }

std::size_t parse_size(std::string_view text, const std::string& what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw UsageError("bad " + what + ": '" + std::string(text) + "'");
  return v;
}

bool is_integral(double v) { return v >= 0 && v == std::floor(v) && v < 1e15; }

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "jsonl" || name == "json-lines") return Format::JsonLines;
  throw UsageError("unknown format '" + name + "' (expected csv or jsonl)");
}

void Table::write(std::ostream& out, Format format) const {
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
    return;
  }
  for (const auto& row : rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < header.size(); ++i) {
      const std::string& cell = i < row.size() ? row[i] : std::string();
      if (cell.empty()) {
        obj[header[i]] = nullptr;
      } else if (cell == "true" || cell == "false") {
        obj[header[i]] = cell == "true";
      } else if (const auto v = as_number(cell)) {
        obj[header[i]] = nlohmann::ordered_json::parse(cell);
      } else {
        obj[header[i]] = cell;
      }
    }
    out << obj.dump() << '\n';
  }
}

HashFamily resolve_family(const std::string& spec, std::uint64_t seed) {
  if (spec.empty()) throw UsageError("--family is required");
  if (std::filesystem::is_regular_file(spec)) {
    std::ifstream in(spec);
    std::stringstream buf;
    buf << in.rdbuf();
    return HashFamily::from_descriptor(parse_descriptor(buf.str()));
  }
  std::string base = spec;
  std::size_t k = 1;
  if (const auto caret = spec.find('^'); caret != std::string::npos) {
    base = spec.substr(0, caret);
    k = parse_size(std::string_view(spec).substr(caret + 1), "power");
  }
  std::vector<std::string> parts;
  std::stringstream ss(base);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.empty()) throw UsageError("empty family spec");
  const auto need = [&](std::size_t n) {
    if (parts.size() != n) throw UsageError("family spec '" + spec + "' has the wrong number of fields");
  };
  HashFamily family = [&] {
    const auto& kind = parts[0];
    if (kind == "bit-sampling") {
      need(2);
      return bit_sampling_family(parse_size(parts[1], "dimension"));
    }
    if (kind == "minhash") {
      need(2);
      return minhash_family(parse_size(parts[1], "dimension"), seed);
    }
    if (kind == "trivial") {
      need(3);
      return trivial_family(parse_size(parts[1], "dimension"), parse_size(parts[2], "radius"));
    }
    if (kind == "constant") {
      need(2);
      return constant_family(parse_size(parts[1], "dimension"));
    }
    throw UsageError("unknown family '" + spec + "' (not a file; expected bit-sampling:D, minhash:D, trivial:D:R or constant:D)");
  }();
  return power(family, k);
}

Table cmd_bounds(const BoundsOptions& o) {
  if (!(o.c_min >= 1.0)) throw UsageError("--c-min must be >= 1");
  if (!(o.c_min < o.c_max)) throw UsageError("--c-min must be below --c-max");
  if (o.steps < 2) throw UsageError("--steps must be at least 2");
  if (o.s_list.empty()) throw UsageError("--s needs at least one value");
  std::vector<double> grid(o.steps);
  for (std::size_t i = 0; i < o.steps; ++i) {
    grid[i] = i + 1 == o.steps ? o.c_max : o.c_min + (o.c_max - o.c_min) * static_cast<double>(i) / static_cast<double>(o.steps - 1);
  }
  Table t;
  t.header = {"c", "im", "ai", "diim", "mnp", "main"};
  const bool multi = o.s_list.size() > 1;
  if (multi) t.header.push_back("s");
  for (double s : o.s_list) {
    for (const auto& row : bound_table(grid, o.d, o.q, s, o.K)) {
      t.rows.push_back({num(row.c), num(row.im), num(row.ai), num(row.diim), num(row.mnp), num(row.main)});
      if (multi) t.rows.back().push_back(num(s));
    }
  }
  return t;
}

Table cmd_ledger(const LedgerOptions& o) {
  Table t;
  t.header = {"field", "value"};
  const auto choice = delta_choice(o.c, o.d, o.q, o.K1);
  add(t, "lambda", num(choice.lambda));
  add(t, "correction", num(main_correction(o.d, o.q, o.K1)));
  double Delta = choice.Delta;
  if (o.Delta) {
    Delta = *o.Delta;
  } else if (choice.trivialized) {
    add(t, "Delta", num(Delta));
    add(t, "trivialized", "true");
    return t;
  }
  const auto g = chernoff_ledger(o.c, o.d, o.q, Delta);
  add(t, "Delta", num(g.Delta));
  add(t, "trivialized", "false");
  add(t, "q_effective", num(g.q_effective));
  add(t, "q_power", num(g.q_power));
  add(t, "epsilon", num(g.epsilon));
  add(t, "tau", num(g.tau));
  add(t, "t", num(g.t));
  add(t, "c_prime", num(g.c_prime));
  add(t, "eta1", num(g.eta1));
  add(t, "delta1", num(g.delta1));
  add(t, "e1_chernoff", num(g.e1_chernoff));
  add(t, "e1_bound", num(g.e1_bound));
  add(t, "eta2", num(g.eta2));
  add(t, "delta2", num(g.delta2));
  add(t, "e2_chernoff", num(g.e2_chernoff));
  add(t, "e2_bound", num(g.e2_bound));
  add(t, "e_total", num(g.e_total));
  const auto n = static_cast<std::uint64_t>(o.d);
  if (static_cast<double>(n) == o.d) {
    add(t, "e1_exact", num(binomial_tail_above(n, g.eta1, g.near_radius)));
    add(t, "e2_exact", num(binomial_tail_below(n, g.eta2, g.far_radius)));
  }
  return t;
}

StabilityResult cmd_stability(const StabilityOptions& o) {
  if (o.t_grid.empty()) throw UsageError("the t grid is empty");
  const auto family = resolve_family(o.family, o.seed);
  StabilityResult res;
  StabilityCurve curve;
  if (o.monte_carlo) {
    curve = mc_stability_curve(family, o.t_grid, o.samples, o.seed);
  } else {
    try {
      curve = stability_curve(family, o.t_grid);
    } catch (const std::length_error& e) {
      throw UsageError(std::string(e.what()) + "; use --mode mc");
    }
  }
  res.curve.header = {"t", "K"};
  if (o.monte_carlo) res.curve.header.push_back("stderr");
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    res.curve.rows.push_back({num(curve.grid[i]), num(curve.values[i])});
    if (o.monte_carlo) res.curve.rows.back().push_back(num(curve.stderrs[i]));
  }
  if (o.monte_carlo) {
    res.certificate = "SKIPPED: log-convexity certificates require the exact spectral curve";
  } else if (curve.grid.size() < 3) {
    res.certificate = "SKIPPED: log-convexity needs at least 3 grid points";
  } else {
    const auto cert = check_log_convexity(curve);
    res.passed = cert.passed;
    res.certificate = (cert.passed ? "PASS" : "FAIL") + std::string(": log-convexity checks=") + num(cert.checks) +
                      " worst_slack=" + num(cert.worst_slack) + " worst_relative=" + num(cert.worst_relative);
    if (!cert.passed) {
      res.certificate += " triple=(" + num(cert.worst_triple[0]) + "," + num(cert.worst_triple[1]) + "," +
                         num(cert.worst_triple[2]) + ")";
    }
  }
  return res;
}

Table cmd_sensitivity(const SensitivityOptions& o) {
  const auto family = resolve_family(o.family, o.seed);
  SensitivityProfile prof;
  if (o.jaccard) {
    prof = exact_jaccard_sensitivity(family, o.r, o.cr);
  } else {
    if (!is_integral(o.r) || !is_integral(o.cr)) throw UsageError("Hamming radii --r and --cr must be integers");
    prof = exact_sensitivity(family, static_cast<std::size_t>(o.r), static_cast<std::size_t>(o.cr));
  }
  Table t;
  t.header = {"family", "distance", "r", "cr", "p", "q", "p_exact", "q_exact", "rho", "status"};
  t.rows.push_back({family.description(), to_string(prof.kind), num(prof.r), num(prof.cr), num(prof.p), num(prof.q),
                    prof.p_exact ? to_string(*prof.p_exact) : "", prof.q_exact ? to_string(*prof.q_exact) : "",
                    prof.rho ? num(*prof.rho) : "", to_string(prof.status)});
  return t;
}

namespace {

void add_params(Table& t, const IndexParams& p) {
  add(t, "r", num(p.r));
  add(t, "cr", num(p.cr));
  add(t, "k", num(p.k));
  add(t, "L", num(p.L));
  add(t, "delta", num(p.delta));
  add(t, "seed", std::to_string(p.seed));
  add(t, "p", num(p.p));
  add(t, "q", num(p.q));
  add(t, "p_k", num(p.predicted_pk));
  add(t, "rho", num(p.rho));
}

void add_stats(Table& t, const IndexStats& s) {
  add(t, "n", num(s.n));
  add(t, "tables", num(s.tables));
  add(t, "buckets", num(s.buckets));
  add(t, "entries", num(s.entries));
  add(t, "mean_bucket", num(s.mean_bucket));
  add(t, "max_bucket", num(s.max_bucket));
  add(t, "memory_bytes", num(s.memory_bytes));
  add(t, "space_exponent", num(s.space_exponent));
  add(t, "predicted_space_exponent", num(s.predicted_exponent));
}

}  // namespace

Table cmd_index_build(const IndexBuildOptions& o) {
  if (o.data.empty()) throw UsageError("--data is required");
  if (o.out.empty()) throw UsageError("--out is required for index build");
  if (!(o.r > 0) || !(o.c > 1)) throw UsageError("index build requires r > 0 and c > 1");
  auto points = read_dataset(o.data);
  if (points.empty()) throw UsageError("dataset is empty");
  const std::size_t d = points.front().dim();
  std::string spec = o.family;
  if (spec == "bit-sampling" || spec == "minhash") spec += ":" + std::to_string(d);
  const auto family = resolve_family(spec, o.seed);
  if (family.dim() != d) throw UsageError("family dimension does not match the dataset");

  IndexParams params;
  if (o.k && o.L) {
    params.r = o.r;
    params.cr = o.c * o.r;
    params.k = *o.k;
    params.L = *o.L;
    params.delta = o.delta;
  } else {
    SensitivityProfile prof;
    const auto& desc = family.descriptor();
    if (desc.kind == FamilyKind::BitSampling && desc.power == 1) {
      prof = bit_sampling_profile(d, o.r, o.c);
    } else if (d <= kMaxExactDim && is_integral(o.r) && is_integral(o.c * o.r)) {
      prof = exact_sensitivity(family, static_cast<std::size_t>(o.r), static_cast<std::size_t>(o.c * o.r));
    } else {
      throw UsageError("cannot plan for this family; pass --k and --L");
    }
    params = plan(points.size(), prof, o.delta);
    if (o.k) params.k = *o.k;
    if (o.L) params.L = *o.L;
  }
  params.seed = o.seed;
  const auto index = NNIndex::build(std::move(points), family, params);
  index.save(std::filesystem::path(o.out));
  Table t;
  t.header = {"field", "value"};
  add_params(t, index.params());
  add_stats(t, index.stats());
  return t;
}

Table cmd_index_query(const IndexQueryOptions& o) {
  if (o.index.empty() || o.queries.empty()) throw UsageError("--index and --queries are required");
  const auto index = NNIndex::load(std::filesystem::path(o.index));
  const auto queries = read_dataset(o.queries);
  Table t;
  t.header = {"query", "id", "distance", "candidates", "tables_probed"};
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto r = index.query(queries[i]);
    t.rows.push_back({num(i), r.id ? num(*r.id) : "", r.id ? num(r.distance) : "", num(r.candidates),
                      num(r.tables_probed)});
  }
  return t;
}

Table cmd_index_experiment(const IndexExperimentOptions& o) {
  ExperimentConfig cfg;
  cfg.n = o.n;
  cfg.d = o.d;
  cfg.r = o.r;
  cfg.c = o.c;
  cfg.delta = o.delta;
  cfg.queries = o.queries;
  cfg.at_radius = o.at_radius;
  cfg.seed = o.seed;
  const auto rep = planted_experiment(cfg);
  Table t;
  t.header = {"field", "value"};
  add_params(t, rep.params);
  add_stats(t, rep.stats);
  add(t, "queries", num(rep.queries));
  add(t, "successes", num(rep.successes));
  add(t, "success_rate", num(rep.success_rate));
  add(t, "all_within_cr", rep.all_within_cr ? "true" : "false");
  add(t, "max_candidates", num(rep.max_candidates));
  add(t, "candidate_cap", num(candidate_cap(rep.params)));
  add(t, "mean_candidates", num(rep.mean_candidates));
  add(t, "hash_evaluations_per_query", num(rep.hash_evaluations));
  return t;
}

void cmd_generate(const GenerateOptions& o) {
  if (o.out.empty()) throw UsageError("--out is required");
  if (o.n == 0 || o.d == 0) throw UsageError("--n and --d must be positive");
  write_dataset(o.out, random_points(o.n, o.d, o.seed), o.binary);
}

Table cmd_jaccard(const JaccardOptions& o) {
  if (o.t_list.empty()) throw UsageError("--t needs at least one value");
  Table t;
  t.header = {"t", "predicted", "mean", "stddev", "stderr", "min", "max", "samples"};
  for (std::size_t i = 0; i < o.t_list.size(); ++i) {
    const auto s = jaccard_of_correlated_sets(o.d, o.t_list[i], o.samples, mix64(o.seed + i));
    t.rows.push_back({num(s.t), num(s.predicted), num(s.mean), num(s.stddev), num(s.stderr), num(s.min), num(s.max),
                      num(s.samples)});
  }
  return t;
}

}  // namespace lshlab::cli
