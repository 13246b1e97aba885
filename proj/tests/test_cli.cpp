#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "shiftsum/cli.hpp"
#include "shiftsum/config.hpp"

using namespace shiftsum;
using json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary; stderr is discarded.
Outcome run_binary(const std::string& args) {
  const char* exe = std::getenv("SHIFTSUM_CLI");
  if (!exe) return {-1, "", "SHIFTSUM_CLI not set"};
  const std::string cmd = std::string(exe) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("2.5"), cplx(2.5, 0.0));
  EXPECT_EQ(parse_complex("2.5,-1"), cplx(2.5, -1.0));
  EXPECT_EQ(parse_complex("1+2i"), cplx(1.0, 2.0));
  EXPECT_EQ(parse_complex("1e-3-2i"), cplx(1e-3, -2.0));
  EXPECT_EQ(parse_complex("-0.5i"), cplx(0.0, -0.5));
  EXPECT_EQ(parse_complex("i"), cplx(0.0, 1.0));
  EXPECT_THROW(parse_complex("abc"), PreconditionError);
  EXPECT_THROW(parse_complex("1,"), PreconditionError);
  EXPECT_THROW(parse_complex(""), PreconditionError);
}

TEST(Config, ParsesKeysCommentsAndBlanks) {
  std::istringstream in("# comment\n\nlevel = 11\nchar_index=3\nepsilon=1e-10\nc_max=220\nq_max=5000\n");
  const Config c = parse_config(in);
  EXPECT_EQ(c.level, 11);
  EXPECT_EQ(c.char_index, 3);
  EXPECT_DOUBLE_EQ(c.epsilon, 1e-10);
  EXPECT_EQ(c.c_max, 220);
  EXPECT_EQ(c.q_max, 5000);
}

TEST(Config, MalformedLineNamesLine) {
  std::istringstream in("level=11\nthis is not a pair\n");
  try {
    parse_config(in);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream unknown("colour=blue\n");
  EXPECT_THROW(parse_config(unknown), ConfigError);
  std::istringstream bad_int("c_max=12x\n");
  EXPECT_THROW(parse_config(bad_int), ConfigError);
}

TEST(Config, MissingFileKeepsDefaults) {
  std::vector<std::string> warnings;
  const Config c = load_config("/nonexistent/shiftsum.conf", Config{}, &warnings);
  EXPECT_EQ(c.level, 11);
  EXPECT_EQ(c.c_max, 1100);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Config, EpsilonClampedWithWarning) {
  Config c;
  c.epsilon = 1e-20;
  std::vector<std::string> warnings;
  const PrecisionPolicy p = c.policy(&warnings);
  EXPECT_DOUBLE_EQ(p.epsilon_abs, PrecisionPolicy::kEpsilonFloor);
  ASSERT_EQ(warnings.size(), 1u);
  c.epsilon = 1e-12;
  warnings.clear();
  c.policy(&warnings);
  EXPECT_TRUE(warnings.empty());
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"lambda-twist", "--c", "11"}).code, 2);
  EXPECT_EQ(run({"coeffs", "--upto", "5", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
  const Outcome r = run({"--config", temp_file("bad.conf", "level=11\nnonsense\n"), "coeffs", "--upto", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, Coefficients) {
  const Outcome r = run({"coeffs", "--upto", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["coefficients"], json::array({1, -2, -1, 2, 1}));
  const Outcome csv = run({"coeffs", "--upto", "3", "--format", "csv"});
  EXPECT_EQ(csv.out, "n,a(n)\n1,1\n2,-2\n3,-1\n");
}

TEST(Cli, LambdaTwist) {
  const Outcome r = run({"lambda-twist", "--t", "1.3", "--c", "11", "--d", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["lambda"][0].get<double>(), 0.34705916101363801, 1e-13);
  EXPECT_NEAR(j["lambda"][1].get<double>(), -0.027994395456362312, 1e-13);
  EXPECT_GT(j["terms"].get<int64_t>(), 0);
  for (const char* key : {"t", "c", "d", "lambda", "err_est", "terms"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["truncation"]["cutoff_csum"].get<int64_t>(), 1100);
  EXPECT_DOUBLE_EQ(j["truncation"]["epsilon_abs"].get<double>(), 1e-13);
}

TEST(Cli, ComputationErrorsExitOne) {
  // gcd(d, c) > 1 and a c not divisible by N
  EXPECT_EQ(run({"lambda-twist", "--c", "22", "--d", "2"}).code, 1);
  EXPECT_EQ(run({"kloosterman", "--n", "1", "--m", "1", "--c", "10"}).code, 1);
  EXPECT_EQ(run({"--q-max", "100", "lambda-twist", "--c", "1100", "--d", "1"}).code, 1);
}

TEST(Cli, FlagsOverrideConfig) {
  const std::string cfg = temp_file("eps.conf", "epsilon=1e-6\n");
  const json loose = json::parse(run({"--config", cfg, "lambda-twist", "--c", "11", "--d", "1"}).out);
  const json tight =
      json::parse(run({"--config", cfg, "--epsilon", "1e-13", "lambda-twist", "--c", "11", "--d", "1"}).out);
  EXPECT_LT(loose["terms"].get<int64_t>(), tight["terms"].get<int64_t>());
}

TEST(Cli, EpsilonBelowFloorWarns) {
  const Outcome r = run({"--epsilon", "1e-20", "lambda-twist", "--c", "11", "--d", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("clamped"), std::string::npos);
}

TEST(Cli, ClassicalCoefficient) {
  const Outcome r = run({"eisenstein-coeff", "--n", "2", "--s", "3", "--route", "closed", "--classical"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["value"][0].get<double>(), 9.7142776542361361e-5, 1e-15);
  EXPECT_EQ(j["route"], "closed");
  EXPECT_EQ(run({"eisenstein-coeff", "--n", "2", "--s", "3", "--route", "closed"}).code, 2);
}

TEST(Binary, JsonIsDeterministic) {
  const Outcome a = run_binary("kloosterman --n -1 --m 3 --c 22 --star");
  const Outcome b = run_binary("kloosterman --n -1 --m 3 --c 22 --star");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_EQ(j["star"], true);
  EXPECT_EQ(j["value"].size(), 2u);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("").code, 2);
  EXPECT_EQ(run_binary("lambda-twist --c 22 --d 2").code, 1);
  EXPECT_EQ(run_binary("verify --suite hecke --no-timing").code, 0);
}

TEST(Binary, VerifyReportShape) {
  const Outcome r = run_binary("verify --suite euler-ratio --no-timing");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_FALSE(j.empty());
  for (const auto& rep : j) {
    EXPECT_EQ(rep["schema"], 1);
    EXPECT_EQ(rep["status"], "pass");
    EXPECT_EQ(rep["runtime_ms"], 0);
    for (const char* key : {"identity_id", "route_a", "route_b", "abs_diff", "tolerance", "truncation"})
      EXPECT_TRUE(rep.contains(key)) << key;
  }
  EXPECT_EQ(r.out, run_binary("verify --suite euler-ratio --no-timing").out);
}
