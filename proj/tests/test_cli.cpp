#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string &args) {
  std::string cmd = std::string(SHMLENF_CLI) + " --spec " + SHMLENF_SPEC_DIR +
                    "/examples.shml " + args + " 2>&1";
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool has(const std::string &out, const std::string &text) {
  return out.find(text) != std::string::npos;
}

} // namespace

TEST_CASE("check") {
  Run good = run("check phi1 pg");
  CHECK(good.code == 0);
  CHECK(has(good.out, "SAT"));
  Run bad = run("check phi1 pb");
  CHECK(bad.code == 1);
  CHECK(has(bad.out, "i?req.i?req"));
  CHECK(run("check phi0 pg").code == 0);
  CHECK(run("check phi0 pb").code == 1);
  CHECK(run("check true nil").code == 0);
  CHECK(run("check phi1 nosuch").code == 2);
  CHECK(run("check '[i?req]ff' 'i!ans.nil'").code == 0);
}

TEST_CASE("synthesize and normalize") {
  Run s = run("synthesize phi1");
  CHECK(s.code == 0);
  CHECK(s.out == "rec x.{(x)?req when x != j}.(rec y2.({x!ans}.x + "
                 "{x?req -> tau}.y2))\n");
  CHECK(run("synthesize true").out == "id\n");
  CHECK(run("synthesize phi0").out ==
        "rec x.{i?req}.(rec y2.({i!ans}.x + {i?req -> tau}.y2))\n");
  CHECK(run("synthesize phi1").out == s.out);
  CHECK(has(run("synthesize phi1 --no-optimize").out, "rec x.(rec y1."));
  Run dump = run("normalize 'max X.([i?req]X && [i?req]ff)' --dump-stages");
  CHECK(dump.code == 0);
  CHECK(has(dump.out, "X0 = "));
  CHECK(run("normalize phins").code == 2);
}

TEST_CASE("simulate") {
  Run r = run("simulate --enforcer ess --process pb --steps 3");
  CHECK(r.code == 0);
  CHECK(has(r.out, "iTrn i?req"));
  CHECK(has(r.out, "iTrn tau"));
  CHECK(has(r.out, "iTrn i!ans"));
  Run ter = run("simulate --enforcer es --process pb --policy script:i?cls");
  CHECK(has(ter.out, "iTer i?cls  <id, nil>"));
}

TEST_CASE("bisim") {
  CHECK(run("bisim --left pg --right pg --left-enforcer id").code == 0);
  Run r = run("bisim --left req --right req --left-enforcer er");
  CHECK(r.code == 1);
  CHECK(has(r.out, "j?req"));
}

TEST_CASE("verify") {
  Run s = run("verify --property soundness --corpus random:30:42");
  CHECK(s.code == 0);
  CHECK(has(s.out, "summary pass=30 fail=0"));
  CHECK(run("verify --property soundness --corpus random:30:42").out == s.out);
  CHECK(run("verify --property transparency --corpus random:30:42").code == 0);
  CHECK(run("verify --property nosuch --corpus random:3").code == 2);
}

TEST_CASE("parse errors carry a position") {
  std::string path = "/tmp/shmlenf_cli_bad.shml";
  std::ofstream(path) << "ports = {i};\npayloads = {req};\nprocess p = i?ans.nil;\n";
  std::string cmd = std::string(SHMLENF_CLI) + " --spec " + path + " check tt p 2>&1";
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 512> buf{};
  std::size_t n = fread(buf.data(), 1, buf.size() - 1, pipe);
  int status = pclose(pipe);
  std::string out(buf.data(), n);
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(has(out, ":3:15:"));
}
