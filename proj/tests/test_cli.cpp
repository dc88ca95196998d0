#include <gtest/gtest.h>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace {

struct Run {
  std::string out;
  int code;
};

// Runs the CLI with stdout captured (stderr is folded in when `merge` is set).
Run run(const std::string& args, bool merge = false) {
  std::string cmd = std::string(MZVDISC_CLI) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {"", -1};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

}  // namespace

TEST(Cli, EvalExamples) {
  EXPECT_EQ(run("eval zeta --index 2 --upper 4").out, "49/36\n");
  EXPECT_EQ(run("eval connector --N 5 --n 2 --m 3").out, "3/10\n");
  EXPECT_EQ(run("eval zeta --index 1,2 --upper 1").out, "0/1\n");
  EXPECT_EQ(run("eval zeta-star --index 1,1 --upper 3").out, "7/4\n");
  EXPECT_EQ(run("eval zeta-flat --index 2 --upper 3").out, "5/4\n");
  EXPECT_EQ(run("eval riemann --index 2 --upper 3").out, "1/4\n");
  EXPECT_EQ(run("eval Z --N 2 --left 2").out, "5/4\n");
  EXPECT_EQ(run("eval zeta --index 2 --upper 4 --decimal 3").out, "49/36\n1.361\n");
  EXPECT_EQ(run("eval zeta --index 2 --upper 4").code, 0);
}

TEST(Cli, EvalJsonCarriesSameValue) {
  auto r = run("eval zeta --index 2 --upper 4 --json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"], "49/36");
}

TEST(Cli, VerifyExamples) {
  auto main_run = run("verify main --max-weight 4 --max-upper 20");
  EXPECT_EQ(main_run.code, 0);
  EXPECT_NE(main_run.out.find("PASS 300/300"), std::string::npos);
  EXPECT_EQ(run("verify log2 --upper 50").code, 0);
  auto dual = run("verify duality-a --primes 3..50 --max-weight 4");
  EXPECT_EQ(dual.code, 0);
  EXPECT_NE(dual.out.find("PASS "), std::string::npos);
}

TEST(Cli, TextAndJsonReportsAgree) {
  auto text = run("verify hoffman-identity --index 2,1 --upper 5");
  auto json = run("verify hoffman-identity --index 2,1 --upper 5 --json");
  ASSERT_EQ(text.code, 0);
  ASSERT_EQ(json.code, 0);
  auto j = nlohmann::json::parse(json.out.substr(0, json.out.find('\n')));
  EXPECT_TRUE(j["pass"].get<bool>());
  for (const char* key : {"check_id", "inputs", "lhs", "rhs", "elapsed_ms"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_NE(text.out.find("lhs=" + j["lhs"].get<std::string>()), std::string::npos);
}

TEST(Cli, ConvergenceCsv) {
  auto r = run("verify duality-r --index 3 --upper 16,32,64 --csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "N,diff_num,diff_den,diff_decimal");
  EXPECT_NE(r.out.find("\n16,"), std::string::npos);
}

TEST(Cli, Trace) {
  EXPECT_EQ(run("trace --index 2 --N 2").out, "Z_2(2 | ) = 5/4\nZ_2( | 2) = 5/4\n");
  auto t = run("trace --index 1,1 --N 3").out;
  EXPECT_EQ(t, "Z_3(1,1 | ) = 1/1\nZ_3(1 | 1) = 1/1\nZ_3( | 1,1) = 1/1\n");
  EXPECT_EQ(run("trace --index 1 --N 1").out, "Z_1(1 | ) = 1/1\nZ_1( | 1) = 1/1\n");
  auto j = nlohmann::json::parse(run("trace --index 2,3 --N 8 --json").out);
  EXPECT_TRUE(j["all_equal"].get<bool>());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("eval zeta --index 2,x --upper 3").code, 2);
  EXPECT_EQ(run("verify bogus").code, 2);
  EXPECT_EQ(run("eval zeta --index 2").code, 2);
  EXPECT_EQ(run("eval zeta --index 2 --upper 100000").code, 3);
  EXPECT_EQ(run("verify main --max-weight 9 --max-upper 3").code, 3);
  EXPECT_EQ(run("verify padic --primes 211 --max-weight 2").code, 3);
  EXPECT_EQ(run("verify main --max-weight 2 --max-upper 3 --cap-weight 1").code, 3);
  EXPECT_EQ(run("eval zeta --index 2 --upper 5000 --cap-upper 5000").code, 0);
}

TEST(Cli, MissingFixturesIsAnError) {
  auto r = run("verify padic --max-weight 2 --fixtures /nonexistent", true);
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.out.find("/nonexistent"), std::string::npos);
}

TEST(Cli, PinnedPadicSuitePasses) {
  auto r = run("verify seki --max-weight 3 --primes 2..60", true);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("below pinned P0=3"), std::string::npos);
}
