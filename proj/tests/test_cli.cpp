#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <catch_amalgamated.hpp>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run omql(const std::string& args) {
  std::string cmd = std::string(OMQL_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) {
    r.out.append(buf.data(), n);
  }
  int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const char* name) { return std::string(OMQL_TEST_DATA) + "/" + name; }

std::string golden(const char* name) {
  std::ifstream in(std::string(OMQL_GOLDEN) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("lattice check") {
  auto ok = omql("lattice check " + data("mo2.oml"));
  CHECK(ok.status == 0);
  CHECK(contains(ok.out, "VALID orthomodular, center={0,1}"));

  auto bad = omql("lattice check " + data("o6.oml"));
  CHECK(bad.status == 1);
  CHECK(contains(bad.out, "NotOrthomodular witness a,b"));

  auto machine = omql("--format machine lattice check " + data("o6.oml"));
  CHECK(contains(machine.out, "NotOrthomodular FAIL witness=a,b"));
}

TEST_CASE("golden reports") {
  CHECK(omql("--format machine modal verify " + data("mo2.oml")).out == golden("modal_verify_mo2.txt"));
  CHECK(omql("--format machine prove check " + std::string(OMQL_CORPUS_DIR) + "/r_symmetry.proof").out ==
        golden("prove_r_symmetry.txt"));
  CHECK(omql("--format machine taut \"[](x1 | x2) R ([]x1 | []x2)\"").out ==
        golden("taut_nontheorem.txt"));
}

TEST_CASE("exit codes") {
  CHECK(omql("taut \"x1 R x1\"").status == 0);
  CHECK(omql("taut \"[](x1 | x2) R ([]x1 | []x2)\"").status == 1);
  CHECK(omql("taut \"x1 &\"").status == 2);
  CHECK(omql("lattice check /nonexistent.oml").status == 2);
  CHECK(omql("frobnicate").status == 2);
  CHECK(omql("lattice builtin nope").status == 2);
}

TEST_CASE("suite subcommand") {
  auto r = omql("--format machine suite --criteria 11");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "C11 PASS"));
  CHECK(contains(r.out, "# omql suite seed=7"));
}
