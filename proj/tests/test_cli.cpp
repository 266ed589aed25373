#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  std::string cmd = std::string(DECIMALS_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("decide prints the verdict and a witness") {
  Run r = run("decide 'exists x (x != 0 & 2*x = 0)'");
  CHECK(r.code == 0);
  CHECK(r.out == "TRUE\nwitness x = 1/2\n");
  Run f = run("--format=lines decide 'forall x (2*x = 0 -> x = 0)'");
  CHECK(f.code == 1);
  CHECK(f.out == "FALSE;-;-\n");
}

TEST_CASE("exit codes for usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("decide 'x <'").code == 2);
  CHECK(run("decide 'x < y'").code == 2);
  CHECK(run("--model loc:4 qe 'x < 1/2'").code == 2);
  CHECK(run("--format=xml decide 'true'").code == 2);
  CHECK(run("torsion-table --n 1").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("torsion table for n = 2") {
  Run r = run("--format=lines torsion-table --n 2");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "CELL;0;1/2;1,2\n"
        "CELL;1/2;1;2,1\n"
        "THETA;1;2;x != 0 & 2*x = 0\n"
        "PHI;1;2;x < 2*x | x = 0\n");
  Run t = run("torsion-table --n 2");
  CHECK(t.out.find("sigma=(1,2)") != std::string::npos);
  CHECK(t.out.find("sigma=(2,1)") != std::string::npos);
}

TEST_CASE("axioms check on D at bound 6") {
  Run r = run("axioms --theory T --model D --bound 6 --check --format=lines");
  CHECK(r.code == 0);
  size_t lines = 0, holds = 0;
  size_t pos = 0;
  while (pos < r.out.size()) {
    size_t end = r.out.find('\n', pos);
    std::string line = r.out.substr(pos, end - pos);
    ++lines;
    // SCHEME;PARAMS;VERDICT;WITNESS
    size_t a = line.find(';'), b = line.find(';', a + 1), c = line.find(';', b + 1);
    REQUIRE(c != std::string::npos);
    if (line.substr(b + 1, c - b - 1) == "HOLDS") ++holds;
    pos = end + 1;
  }
  CHECK(lines > 500);
  CHECK(holds == lines);
}

TEST_CASE("fixed seed gives identical output") {
  std::string args = "--format=lines --seed 7 --samples 500 hyper check";
  Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("SUITE;", 0) == 0);
}

TEST_CASE("config file with flag override") {
  std::string path = "cli_test_config.ini";
  {
    std::ofstream cfg(path);
    cfg << "model=quad:2\nformat=lines\n";
  }
  Run r = run("--config " + path + " eval 'x < 2*x' --at 'x=sqrt(2)-1'");
  CHECK(r.code == 0);
  CHECK(r.out == "TRUE;exact\n");
  Run o = run("--config " + path + " --model D eval 'x < 2*x' --at x=2/3");
  CHECK(o.out == "FALSE;exact\n");
  std::remove(path.c_str());
}

TEST_CASE("qe and eval") {
  Run q = run("qe --pure-L 'x < 1/3'");
  CHECK(q.code == 0);
  CHECK(q.out == "x < 2*x & 2*x < 3*x | x = 0\n");
  Run e = run("eval 'x < 2*x' --at x=1/3");
  CHECK(e.out == "TRUE\n");
  Run s = run("selftest --criterion 8 --format=lines");
  CHECK(s.code == 0);
  CHECK(s.out.rfind("CRITERION;8;PASS;", 0) == 0);
}
