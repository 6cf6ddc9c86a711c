#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "iwalog/eval.hpp"
#include "iwalog/suites.hpp"

namespace {

using iwalog::io::json;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

CliRun run(const std::string& args) {
  const std::string err_file = ::testing::TempDir() + "iwalog_cli_stderr.txt";
  const std::string cmd = std::string(IWALOG_CLI) + " " + args + " 2>" + err_file;
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

json error_of(const CliRun& r) {
  EXPECT_TRUE(r.err.find('{') == std::string::npos) << r.err;
  return json::parse(r.out);
}

TEST(Cli, PsiOfT) {
  const CliRun r = run("eval psi --l 3 --prec-l 4 --trunc-T 12 " + quote(R"({"coeffs":{"1":"1"}})"));
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["coeffs"], json({{"1", "3"}, {"2", "3"}, {"3", "1"}}));
  EXPECT_FALSE(j.contains("coeff_prec"));
}

TEST(Cli, LogT) {
  const CliRun r = run("eval log-T --l 3 --prec-l 1 --trunc-T 5");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json::parse(r.out)["coeffs"], json({{"-1", "2"}, {"-2", "2"}}));
}

TEST(Cli, OperandFromFile) {
  const std::string path = ::testing::TempDir() + "iwalog_operand.json";
  std::ofstream(path) << R"({"l":5,"prec":3,"value":"2"})";
  const CliRun r = run("eval teichmueller @" + path);
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json::parse(r.out)["value"], "57");
}

TEST(Cli, DomainErrorsExitTwo) {
  CliRun r = run("eval psi --l 4 " + quote(R"({"coeffs":{"1":"1"}})"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_of(r)["error"], "InvalidPrime");

  r = run("eval teichmueller --l 3 " + quote(R"("3")"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_of(r)["error"], "TeichmullerOfNonUnit");

  r = run("eval psi " + quote("{bad"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_of(r)["error"], "ParseError");

  r = run("eval no-such-op " + quote(R"("1")"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_of(r)["error"], "DomainViolation");

  r = run("eval psi --prec-l");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(error_of(r)["error"], "ParseError");
  EXPECT_TRUE(error_of(r).contains("detail"));
}

TEST(Cli, PrecisionErrorsExitThree) {
  // C(z, 9) mod 3 needs z mod 27.
  const CliRun r = run("eval binomial --l 3 --prec-l 1 --k 9 " + quote(R"("2")"));
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_EQ(error_of(r)["error"], "PrecisionLoss");
}

TEST(Cli, VerifyAndSelftest) {
  CliRun r = run("verify propB --group 3,3 --samples 10");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("propB: all checks passed"), std::string::npos);

  r = run("verify lemma2 --l 5 --samples 10 --json");
  EXPECT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["suite"], "lemma2");
  EXPECT_EQ(j["ok"], true);

  r = run("verify no-such-suite");
  EXPECT_EQ(r.code, 2);

  r = run("selftest");
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Eval, JsonRoundTrips) {
  iwalog::io::EvalOptions opt;
  const json w = {{"l", 3}, {"prec_l", 4}, {"trunc_T", 10}, {"coeffs", {{"-2", "5"}, {"0", "1"}, {"3", "80"}}}};
  EXPECT_EQ(iwalog::io::evaluate("negate", {iwalog::io::evaluate("negate", {w}, opt)}, opt), w);

  const json lam = {{"l", 5}, {"prec_l", 3}, {"trunc_T", 4}, {"coeffs", {"1", "2", "0", "0", "124"}}};
  EXPECT_EQ(iwalog::io::evaluate("add", {lam, iwalog::io::evaluate("negate", {lam}, opt)}, opt)["coeffs"],
            json({"0", "0", "0", "0", "0"}));

  const json x = {{"group", {3, 3}},
                  {"prec_l", 3},
                  {"trunc_T", 8},
                  {"coeffs", {{"(1,2)", {{"coeffs", {{"1", "4"}}}}}, {"(0,0)", {{"coeffs", {{"0", "1"}}}}}}}};
  const json y = iwalog::io::evaluate("negate", {iwalog::io::evaluate("negate", {x}, opt)}, opt);
  EXPECT_EQ(iwalog::io::evaluate("sub", {x, y}, opt)["coeffs"], json::object());
  EXPECT_EQ(y["coeffs"]["(1,2)"]["coeffs"]["1"], "4");
}

TEST(Eval, DecomposeRecompose) {
  iwalog::io::EvalOptions opt;
  opt.defaults = {3, 4, 30, {}};
  const json e = {{"coeffs", {{"1", "2"}, {"2", "2"}, {"-1", "3"}}}};
  const json f = iwalog::io::evaluate("decompose", {e}, opt);
  EXPECT_EQ(f["n"], 1);
  const json back = iwalog::io::evaluate("recompose", {f}, opt);
  const json diff = iwalog::io::evaluate("sub", {back, e}, opt);
  for (const auto& [k, v] : diff["coeffs"].items())
    if (std::stoi(k) <= iwalog::io::wedge_from_json(diff, opt.defaults).window()) ADD_FAILURE() << k << " " << v;
}

}  // namespace
