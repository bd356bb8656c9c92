// Drives the fneval binary end to end and checks output and exit codes.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fneval/report.hpp"

#ifndef FNEVAL_CLI_PATH
#error "FNEVAL_CLI_PATH must point at the fneval executable"
#endif

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  const auto err_path =
      std::filesystem::temp_directory_path() / "fneval_cli_test_stderr.txt";
  const std::string cmd = std::string(FNEVAL_CLI_PATH) + " " + args + " 2>" +
                          err_path.string();
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream ef(err_path);
  std::stringstream ss;
  ss << ef.rdbuf();
  r.err = ss.str();
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(CliEval, NaryFigureExample) {
  const auto r =
      run_cli("eval --expr \"x+y+1\" --method nary --bind x=0.5 --bind y=0.25");
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "1.75\n");
}

TEST(CliEval, StringMethodPrintsShortest) {
  const auto r = run_cli("eval --expr \"sin(0)\" --method string");
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "0\n");
}

TEST(CliEval, AllMethodsAgreeOnFunction8) {
  std::vector<std::string> outs;
  for (std::string m : {"blackbox", "binary", "nary", "string"}) {
    const auto r = run_cli("eval --expr \"2*x*y*(x+y+1)\" --method " + m +
                           " --bind x=0.25 --bind y=0.5");
    EXPECT_EQ(r.exit_code, 0) << m << ": " << r.err;
    outs.push_back(r.out);
  }
  for (const auto& o : outs) EXPECT_EQ(o, "0.4375\n");
  const auto by_id =
      run_cli("eval --method blackbox --function 8 --bind x=0.25 --bind y=0.5");
  EXPECT_EQ(by_id.out, "0.4375\n");
}

TEST(CliEval, ExtraVariablesExtendTable) {
  const auto r = run_cli("eval --expr \"x*z\" --bind z=3 --bind x=2");
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "6\n");
}

TEST(CliEval, ParseErrorShowsCaret) {
  const auto r = run_cli("eval --expr \"x+\"");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_TRUE(r.out.empty());
  const auto lines = lines_of(r.err);
  ASSERT_GE(lines.size(), 3u);
  EXPECT_EQ(lines[1], "  x+");
  EXPECT_EQ(lines[2], "    ^");  // two-space indent, caret at offset 2
}

TEST(CliEval, EvaluationFaultExitsTwo) {
  EXPECT_EQ(run_cli("eval --expr \"log(x)\" --bind x=0").exit_code, 2);
  EXPECT_EQ(run_cli("eval --expr \"1/(x-x)\" --method binary --bind x=1").exit_code, 2);
  EXPECT_EQ(run_cli("eval --expr \"x+y\" --bind x=1").exit_code, 2);
}

TEST(CliEval, UsageErrorsExitOne) {
  EXPECT_EQ(run_cli("eval --expr x --method nope").exit_code, 1);
  EXPECT_EQ(run_cli("eval --expr x --bind x").exit_code, 1);
  EXPECT_EQ(run_cli("eval --expr x --unknown-flag").exit_code, 1);
  EXPECT_EQ(run_cli("").exit_code, 1);
  EXPECT_EQ(run_cli("eval --method blackbox --expr \"x*y\"").exit_code, 1);
}

TEST(CliParse, BinaryAndFlattened) {
  const auto plain = run_cli("parse --expr \"x+y+1\"");
  EXPECT_EQ(plain.exit_code, 0);
  EXPECT_EQ(lines_of(plain.out).size(), 5u);
  EXPECT_EQ(plain.out,
            "Sum (2 children)\n"
            "  Sum (2 children)\n"
            "    Variable 0\n"
            "    Variable 1\n"
            "  Constant 1\n");

  const auto flat = run_cli("parse --expr \"x+y+1\" --flatten");
  EXPECT_EQ(flat.exit_code, 0);
  const auto lines = lines_of(flat.out);
  EXPECT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "Sum (3 children)");

  const auto dump = run_cli("parse --expr \"sin(x)^2\" --dump");
  EXPECT_EQ(dump.out, "(power (sin (var 0)) (const 2))\n");
}

TEST(CliParse, UnbalancedParen) {
  const auto r = run_cli("parse --expr \"(\"");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("UnbalancedParen"), std::string::npos) << r.err;
}

TEST(CliValidate, ThreeDigitsPass) {
  const auto r = run_cli("validate --digits 3 --points 1000");
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  int rows = 0;
  for (const auto& l : lines_of(r.out)) {
    if (!l.empty() && l[0] == 'f') ++rows;
  }
  EXPECT_EQ(rows, 8);
}

TEST(CliValidate, ZeroPointsWarns) {
  const auto r = run_cli("validate --points 0");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.err.find("0 points"), std::string::npos);
}

TEST(CliValidate, FifteenDigitsNamesPairWhenFailing) {
  const auto r = run_cli("validate --digits 15");
  if (r.exit_code == 3) {
    EXPECT_NE(r.err.find(" vs "), std::string::npos);
  } else {
    EXPECT_EQ(r.exit_code, 0);
  }
}

TEST(CliValidate, BadDigits) {
  EXPECT_EQ(run_cli("validate --digits 0").exit_code, 1);
}

TEST(CliBench, CsvSubset) {
  const auto r = run_cli(
      "bench --methods nary,string --format csv --n 100 --reps 2 "
      "--min-window-ms 1");
  EXPECT_EQ(r.exit_code, 0) << r.err;
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 17u);
  EXPECT_EQ(lines[0].rfind("method,expression_id", 0), 0u);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    EXPECT_TRUE(lines[i].rfind("nary,", 0) == 0 ||
                lines[i].rfind("string,", 0) == 0)
        << lines[i];
  }
}

TEST(CliBench, JsonIsPureAndParses) {
  const auto r = run_cli(
      "bench --format json --n 50 --reps 1 --min-window-ms 1 --exprs 7,8");
  EXPECT_EQ(r.exit_code, 0) << r.err;
  const auto report = fneval::report_from_json(r.out);
  EXPECT_EQ(report.cells.size(), 8u);
  EXPECT_TRUE(fneval::checksums_consistent(report, 1e-9));
}

TEST(CliBench, TableHasFourRows) {
  const auto r = run_cli("bench --n 50 --reps 1 --min-window-ms 1 --format table");
  EXPECT_EQ(r.exit_code, 0) << r.err;
  int rows = 0;
  for (const auto& l : lines_of(r.out)) {
    for (auto label : {"Black-box", "Binary", "N-ary", "String"}) {
      if (l.rfind(label, 0) == 0) ++rows;
    }
  }
  EXPECT_EQ(rows, 4);
}

TEST(CliBench, InvalidConfig) {
  EXPECT_EQ(run_cli("bench --n 0").exit_code, 1);
  EXPECT_EQ(run_cli("bench --methods nary,bogus").exit_code, 1);
  EXPECT_EQ(run_cli("bench --exprs 9").exit_code, 1);
  EXPECT_EQ(run_cli("bench --format xml").exit_code, 1);
}

TEST(CliBench, SameSeedSameChecksums) {
  const std::string args =
      "bench --format json --n 100 --reps 1 --min-window-ms 1 --seed 7";
  const auto a = fneval::report_from_json(run_cli(args).out);
  const auto b = fneval::report_from_json(run_cli(args).out);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  EXPECT_EQ(a.input_hash, b.input_hash);
  for (std::size_t i = 0; i < a.cells.size(); ++i)
    EXPECT_EQ(a.cells[i].checksum, b.cells[i].checksum);
}

}  // namespace
