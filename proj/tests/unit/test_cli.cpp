#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <unistd.h>
#include <sstream>
#include <string>
#include <vector>

#include "lshlab_tools/commands.hpp"

using namespace lshlab;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run lshlab_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"lshlab"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("lshlab_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(CliBounds, NineteenRows) {
  const auto r = lshlab_cli({"bounds", "--c-min", "1", "--c-max", "10", "--steps", "19", "--d", "1e6", "--q", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 20u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "c,im,ai,diim,mnp,main");
  EXPECT_NE(r.out.find("0.46211715726"), std::string::npos);
}

TEST(CliBounds, UsageErrors) {
  EXPECT_EQ(lshlab_cli({"bounds", "--c-min", "3", "--c-max", "2"}).code, 2);
  EXPECT_EQ(lshlab_cli({"bounds", "--bogus"}).code, 2);
  EXPECT_EQ(lshlab_cli({}).code, 2);
  EXPECT_EQ(lshlab_cli({"bounds", "--format", "xml"}).code, 2);
}

TEST(CliBounds, JsonLinesMirrorsCsv) {
  const auto r = lshlab_cli({"bounds", "--c-min", "1", "--c-max", "2", "--steps", "2", "--format", "jsonl"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 2u);
  EXPECT_EQ(r.out.rfind("{\"c\":1,\"im\":1,\"ai\":1,\"diim\":1,\"mnp\":0.46211715726,", 0), 0u);
}

TEST(CliStability, DictatorCurveAndCertificate) {
  const auto r = lshlab_cli({"stability", "--family", "bit-sampling:5", "--t", "0,0.5,1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "t,K\n0,1\n0.5,0.803265329856\n1,0.683939720586\n");
  EXPECT_EQ(r.err.rfind("PASS", 0), 0u);
}

TEST(CliStability, EmptyGridAndMonteCarlo) {
  EXPECT_EQ(lshlab_cli({"stability", "--family", "bit-sampling:5"}).code, 2);
  const auto mc = lshlab_cli({"stability", "--family", "minhash:30", "--t", "0.2", "--mode", "mc", "--samples", "500"});
  EXPECT_EQ(mc.code, 0) << mc.err;
  EXPECT_EQ(mc.out.substr(0, mc.out.find('\n')), "t,K,stderr");
}

TEST(CliSensitivity, Cases) {
  const auto bit = lshlab_cli({"sensitivity", "--family", "bit-sampling:8", "--r", "2", "--cr", "4"});
  ASSERT_EQ(bit.code, 0);
  EXPECT_NE(bit.out.find(",3/4,1/2,"), std::string::npos);
  const auto triv = lshlab_cli({"sensitivity", "--family", "trivial:4:1", "--r", "1", "--cr", "2"});
  EXPECT_NE(triv.out.find("trivial regime"), std::string::npos);
  const auto big = lshlab_cli({"sensitivity", "--family", "bit-sampling:16", "--r", "1", "--cr", "2"});
  EXPECT_EQ(big.code, 2);
  EXPECT_NE(big.err.find("Monte Carlo"), std::string::npos);
}

TEST(CliIndex, BuildQueryRoundTrip) {
  TempDir dir;
  ASSERT_EQ(lshlab_cli({"generate", "--n", "300", "--d", "48", "--out", dir / "data.txt"}).code, 0);
  const auto b1 = lshlab_cli({"index", "build", "--data", dir / "data.txt", "--r", "3", "--c", "2", "--index",
                              dir / "a.idx", "--seed", "5"});
  ASSERT_EQ(b1.code, 0) << b1.err;
  const auto b2 = lshlab_cli({"index", "build", "--data", dir / "data.txt", "--r", "3", "--c", "2", "--index",
                              dir / "b.idx", "--seed", "5"});
  ASSERT_EQ(b2.code, 0);
  EXPECT_EQ(slurp(dir / "a.idx"), slurp(dir / "b.idx"));
  EXPECT_EQ(b1.out, b2.out);
  const auto q = lshlab_cli({"index", "query", "--index", dir / "a.idx", "--queries", dir / "data.txt"});
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_EQ(count_lines(q.out), 301u);
  EXPECT_NE(q.out.find("\n0,0,0,"), std::string::npos);
}

TEST(CliIndex, MissingFiles) {
  EXPECT_EQ(lshlab_cli({"index", "query", "--index", "/nonexistent/x.idx", "--queries", "/nonexistent/q"}).code, 2);
}

TEST(CliIndex, Experiment) {
  const auto r = lshlab_cli({"index", "experiment", "--n", "400", "--d", "64", "--r", "4", "--queries", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("all_within_cr,true"), std::string::npos);
}

TEST(CliLedger, TrivializedAndExplicitDelta) {
  const auto triv = lshlab_cli({"ledger", "--c", "2", "--d", "1e4", "--q", "0.5"});
  EXPECT_NE(triv.out.find("trivialized,true"), std::string::npos);
  const auto led = lshlab_cli({"ledger", "--c", "2", "--d", "1e6", "--q", "0.5", "--Delta", "0.004"});
  EXPECT_NE(led.out.find("e1_bound,0.999984000128"), std::string::npos);
  EXPECT_EQ(lshlab_cli({"ledger", "--Delta", "0.01"}).code, 2);
}

TEST(CliVerify, DeterministicPass) {
  TempDir dir;
  ASSERT_EQ(lshlab_cli({"verify", "all", "--out", dir / "a.csv"}).code, 0);
  ASSERT_EQ(lshlab_cli({"verify", "all", "--out", dir / "b.csv"}).code, 0);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
}

TEST(CliVerify, InjectedFaultFailsNamedInvariant) {
  const auto r = lshlab_cli({"verify", "parseval", "--inject-fault", "spectrum"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("parseval,sum_of_weights,FAIL"), std::string::npos);
}

TEST(CliVerify, UnknownSuite) { EXPECT_EQ(lshlab_cli({"verify", "nonsense"}).code, 2); }

TEST(CliFamily, DescriptorFileAndPower) {
  TempDir dir;
  {
    std::ofstream f(dir / "fam.txt");
    f << "lshlab-family 1\nkind explicit\nd 3\nk 1\nseed 1\nfn 1/2 projection 0\nfn 1/2 parity 1,2\n";
  }
  const auto r = lshlab_cli({"sensitivity", "--family", dir / "fam.txt", "--r", "1", "--cr", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto p = lshlab_cli({"sensitivity", "--family", "bit-sampling:6^2", "--r", "1", "--cr", "2"});
  EXPECT_NE(p.out.find(",25/36,4/9,"), std::string::npos);
}
