// Drives the actual CLI binary (path injected by the build) through a shell.
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(IRG_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

RunResult run_shell(const std::string& shell_line) {
  FILE* pipe = popen((shell_line + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

TEST_CASE("examples pipe into poly, reproducing the running example") {
  std::string line = std::string(IRG_CLI_PATH) + " examples figure1 | " + IRG_CLI_PATH +
                     " poly -";
  RunResult res = run_shell(line);
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("5·m11·m13·m21 + m13·m22") != std::string::npos);
}

TEST_CASE("verify exit codes follow the contract") {
  CHECK(run("verify figure1 \"(0,1,0);(1,0)\" --kind cdt --eps 0").exit_code == 0);
  CHECK(run("verify figure1 \"(0,1,0);(1,0)\" --kind edt --eps 1e-3").exit_code == 1);
  CHECK(run("verify figure1 \"(0,1,0);(1,0)\" --kind cdt").exit_code == 2);  // missing eps
  CHECK(run("verify no_such_file \"(0,1,0);(1,0)\" --kind cdt --eps 0").exit_code == 3);
}

TEST_CASE("eval emits the exact rational value") {
  RunResult res = run("eval figure1 \"(1/2, 0, 1/2); (1, 0)\"");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("value: 5/4\n") != std::string::npos);
}

TEST_CASE("examples lists built-ins when no name is given") {
  RunResult res = run("examples");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("sleeping_beauty\n") != std::string::npos);
}

TEST_CASE("beliefs subcommand reports the thirding value") {
  RunResult res = run("beliefs sleeping_beauty \"(1)\" --infoset I --system gt");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("node 1: 1/3") != std::string::npos);
}

TEST_CASE("solve output is byte-identical across runs with a fixed seed") {
  std::string args = "solve figure1 --method exante --seed 42 --max-iters 4000";
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("report: solve") != std::string::npos);
}

TEST_CASE("solver flags survive the kv round trip") {
  RunResult res = run("solve absentminded_driver --method kkt --tol 1e-9 --max-iters 9000");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("status: converged") != std::string::npos);
}

TEST_CASE("node budget can come from the environment") {
  RunResult res = run_shell("IRGAMES_NODE_BUDGET=10 " + std::string(IRG_CLI_PATH) +
                            " decide figure1 --query exante --target 2 --eps 1e-3 --grid 100");
  CHECK(res.exit_code == 4);
}

TEST_CASE("decide exit codes: yes 0, no-evidence 1, budget 4") {
  CHECK(run("decide figure1 --query exante --target 5/4 --eps 1e-9 --grid 8").exit_code ==
        0);
  CHECK(run("decide figure1 --query exante --target 2 --eps 1e-3 --grid 8").exit_code == 1);
  CHECK(run("decide figure1 --query exante --target 2 --eps 1e-3 --grid 100 --budget 10")
            .exit_code == 4);
}

TEST_CASE("reduce and recover through files") {
  std::string dir = []() {
    const char* t = std::getenv("TMPDIR");
    return std::string(t ? t : "/tmp");
  }();
  std::string cnf_path = dir + "/irg_cli_test.cnf";
  std::string red_path = dir + "/irg_cli_test.red";
  {
    std::ofstream f(cnf_path);
    f << "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n";
  }
  RunResult red = run_shell(std::string(IRG_CLI_PATH) + " reduce sat " + cnf_path + " > " +
                            red_path);
  CHECK(red.exit_code == 0);
  RunResult rec = run("recover " + red_path + " \"(1,0);(1,0);(0,1)\"");
  CHECK(rec.exit_code == 0);
  CHECK(rec.out.find("validated: yes") != std::string::npos);
  RunResult bad = run("recover " + red_path + " \"(1,0);(1,0);(1,0)\"");
  CHECK(bad.exit_code == 1);  // T,T,T falsifies the second clause
  std::remove(cnf_path.c_str());
  std::remove(red_path.c_str());
}

TEST_CASE("certify emits the KKT certificate") {
  RunResult res = run("certify figure2_restricted \"(2/5, 0, 3/5)\" --eps 1e-9");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("residual: 0\n") != std::string::npos);
  CHECK(res.out.find("kappa I1: 3/2") != std::string::npos);
}

TEST_CASE("poly can emit the gradient field as numeric data") {
  RunResult res = run("poly figure2_restricted --gradient-grid 2");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("report: gradient-grid") != std::string::npos);
  CHECK(res.out.find("grad (1/2, 1/2, 0): (0, 0, 7/4)") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("").exit_code == 2);
}
