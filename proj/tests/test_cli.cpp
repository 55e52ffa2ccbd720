#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qstar/cli.hpp"
#include "qstar/corpus.hpp"

using namespace qstar;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string &name, const std::string &text) {
  auto path = std::filesystem::temp_directory_path() / ("qstar_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("check") {
  Result ok = run({"check", write_temp("coin.qst", hadamard_example() + "\n")});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.rfind("OK", 0) == 0);
  CHECK(ok.out.find("app") != std::string::npos);

  Result dup = run({"check", write_temp("dup.qst", "\\x. x x\n")});
  CHECK(dup.code == kExitSemantic);
  CHECK(dup.err.find("used twice") != std::string::npos);
  CHECK(dup.err.find(":1:") != std::string::npos);

  Result syntax = run({"check", write_temp("bad.qst", "(\\x. x\n")});
  CHECK(syntax.code == kExitUsage);
  CHECK(syntax.err.rfind("error: ", 0) == 0);

  CHECK(run({"check", "/nonexistent/file.qst"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"dist"}).code == kExitUsage);
}

TEST_CASE("dist") {
  Result r = run({"dist", write_temp("coin.qst", hadamard_example())});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "0.5\t0\tcount=1\n0.5\t1\tcount=1\nany\t1\tcount=2\n");

  Result coin = run({"dist", write_temp("coin3.qst", bounded_coin(3)), "--strategy", "rightmost"});
  CHECK(coin.out.find("0.875\t0\tcount=3") != std::string::npos);

  Result y = run({"dist", write_temp("y.qst", fixpoint_coin()), "--depth", "40"});
  CHECK(y.code == kExitOk);
  CHECK(y.out.find("not maximal: depth bound 40 reached") != std::string::npos);

  Result j = run({"dist", write_temp("coin.qst", hadamard_example()), "--json"});
  nlohmann::json parsed = nlohmann::json::parse(j.out);
  CHECK(parsed.is_object());
}

TEST_CASE("run is reproducible per seed") {
  const std::string file = write_temp("coin.qst", hadamard_example());
  Result a = run({"run", file, "--seed", "1"});
  Result b = run({"run", file, "--seed", "1"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("0\tstart\t1\t", 0) == 0);
  CHECK(a.out.find("final\t[1, {}, 1]") != std::string::npos);
  Result c = run({"run", file, "--seed", "2"});
  CHECK(c.out.find("final\t[1, {}, 0]") != std::string::npos);

  Result loop = run({"run", write_temp("omega.qst", "(\\!x. x !x) !(\\!x. x !x)"), "--depth", "10"});
  CHECK(loop.code == kExitResource);
  CHECK(loop.err.find("depth exceeded") != std::string::npos);
}

TEST_CASE("mixed and trace") {
  const std::string file = write_temp("coin.qst", hadamard_example());
  Result m = run({"mixed", file, "--steps", "6"});
  CHECK(m.code == kExitOk);
  CHECK(m.out.find("step 6\n0.5\t0") != std::string::npos);
  Result mj = run({"mixed", file, "--steps", "2", "--json"});
  CHECK(nlohmann::json::parse(mj.out).size() == 3);
  Result t = run({"trace", file});
  CHECK(t.code == kExitOk);
  CHECK(t.out.find("meas(r0)=1") != std::string::npos);
}

TEST_CASE("gates and configuration") {
  const std::string gates = write_temp("gates.txt", "gate SQRTX 1\n0.5,0.5 0.5,-0.5\n0.5,-0.5 0.5,0.5\n");
  const std::string file = write_temp("sqrtx.qst", "meas (SQRTX (SQRTX (new 0)))");
  Result r = run({"dist", file, "--gates", gates});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("1\t!1") != std::string::npos);
  CHECK(run({"check", file}).code == kExitSemantic);
  CHECK(run({"dist", file, "--gates", "/nonexistent"}).code == kExitUsage);
  Result sc = run({"dist", file, "--show-config", "--depth", "7"});
  CHECK(sc.code == kExitOk);
  CHECK(sc.out.find("7") != std::string::npos);
}

TEST_CASE("verify") {
  Result v = run({"verify", "--size", "3", "--sample-size", "5", "--per-size", "5"});
  // The K/K counterexample among the clause examples fails the diamond suite.
  CHECK(v.code == kExitSemantic);
  CHECK(v.out.find("FAIL\tdiamond") != std::string::npos);
  CHECK(v.out.find("PASS\tconfluence") != std::string::npos);
  CHECK(v.out.find("PASS\tsubject-reduction") != std::string::npos);
  Result k = run({"verify", "--suite", "ktermination", "--size", "3", "--sample-size", "5", "--per-size", "5"});
  CHECK(k.code == kExitOk);
  CHECK(run({"verify", "--suite", "nothing"}).code == kExitUsage);
  CHECK(run({"verify", "--size", "40"}).code == kExitUsage);
}
