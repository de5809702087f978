#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lshlab/hash_family.hpp"
#include "lshlab/rng.hpp"

namespace lshlab::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

/// Thrown for bad flags or parameters; maps to exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, JsonLines };
Format parse_format(const std::string& name);

/// Rows of preformatted cells. CSV is canonical; JSON lines mirror it with
/// one object per row, numeric cells emitted as numbers.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out, Format format) const;
};

/// A family named either by a descriptor file or by an inline spec:
/// bit-sampling:D | minhash:D | trivial:D:R | constant:D, optionally
/// followed by ^K for the powering construction.
HashFamily resolve_family(const std::string& spec, std::uint64_t seed = kDefaultSeed);

struct BoundsOptions {
  double c_min = 1.0;
  double c_max = 10.0;
  std::size_t steps = 19;
  double d = 1e6;
  double q = 0.5;
  double K = 1.0;
  std::vector<double> s_list{1.0};
  Format format = Format::Csv;
};
/// One bound table per s, concatenated with an `s` column when more than one s is given.
Table cmd_bounds(const BoundsOptions& opts);

struct LedgerOptions {
  double c = 2.0;
  double d = 1e6;
  double q = 0.5;
  double K1 = 1.0;
  std::optional<double> Delta;  ///< defaults to delta_choice(c, d, q, K1)
};
Table cmd_ledger(const LedgerOptions& opts);

struct StabilityOptions {
  std::string family;
  std::vector<double> t_grid;
  bool monte_carlo = false;
  std::size_t samples = 20000;
  std::uint64_t seed = kDefaultSeed;
};
struct StabilityResult {
  Table curve;
  std::string certificate;  ///< one line, starts with PASS / FAIL / SKIPPED
  bool passed = true;
};
StabilityResult cmd_stability(const StabilityOptions& opts);

struct SensitivityOptions {
  std::string family;
  double r = 1;
  double cr = 2;
  bool jaccard = false;
  std::uint64_t seed = kDefaultSeed;
};
Table cmd_sensitivity(const SensitivityOptions& opts);

struct IndexBuildOptions {
  std::string data;
  std::string family = "bit-sampling";  ///< dimension taken from the data when omitted
  double r = 1;
  double c = 2;
  std::optional<std::size_t> k;
  std::optional<std::size_t> L;
  double delta = 0.1;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};
Table cmd_index_build(const IndexBuildOptions& opts);

struct IndexQueryOptions {
  std::string index;
  std::string queries;
};
Table cmd_index_query(const IndexQueryOptions& opts);

struct IndexExperimentOptions {
  std::size_t n = 2000;
  std::size_t d = 128;
  std::size_t r = 8;
  double c = 2.0;
  double delta = 0.1;
  std::size_t queries = 200;
  bool at_radius = false;
  std::uint64_t seed = kDefaultSeed;
};
Table cmd_index_experiment(const IndexExperimentOptions& opts);

struct GenerateOptions {
  std::size_t n = 1000;
  std::size_t d = 64;
  std::uint64_t seed = kDefaultSeed;
  bool binary = false;
  std::string out;
};
void cmd_generate(const GenerateOptions& opts);

struct JaccardOptions {
  std::size_t d = 100000;
  std::vector<double> t_list{0.1, 0.5};
  std::size_t samples = 200;
  std::uint64_t seed = kDefaultSeed;
};
Table cmd_jaccard(const JaccardOptions& opts);

/// Suites: all, parseval, oracle, log-convexity, sandwich, chernoff,
/// exactness, powering, index.
std::vector<std::string> verify_suites();

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = kDefaultSeed;
  /// Test hook: "spectrum" perturbs one Fourier weight before the checks run.
  std::string inject_fault;
};
struct VerifyResult {
  Table report;  ///< suite,check,status,detail
  std::size_t failures = 0;
};
VerifyResult cmd_verify(const VerifyOptions& opts);

/// Parses argv, runs the command, and returns the exit status.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lshlab::cli
