#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "sharpset/cli.hpp"
#include "sharpset/closedform.hpp"

using namespace sharpset;

namespace {

Vec ints(std::initializer_list<int> xs) {
  Vec v;
  for (int x : xs) v.push_back(Rat(x));
  return v;
}

struct Proc {
  int code = -1;
  std::string out;
};

Proc sh(const std::string& args) {
  Proc p;
  const std::string cmd = std::string(SHARPSET_CLI) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), f)) p.out += buf.data();
  const int st = pclose(f);
  p.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return p;
}

RunConfig heuristic(const Vec& v) {
  RunConfig c;
  c.model = binary_static(v);
  return c;
}

}  // namespace

TEST_CASE("render_inequality puts positive terms on the left") {
  const auto l2 = outcome_labels(2, 2);
  CHECK(render_inequality(ints({0, -1, 1, 0}), l2) == "p[1,0] ≤ p[0,1]");
  CHECK(render_inequality(ints({0, 0, 0, 0}), l2) == "0 ≤ 0");
  CHECK(render_inequality(ints({0, 0, 1, 0}), l2) == "p[1,0] ≤ 0");
  CHECK(render_inequality({Rat(0), Rat(-3, 2), Rat(2), Rat(0)}, l2) == "2*p[1,0] ≤ 3/2*p[0,1]");

  Vec y(16);
  for (int d = 0; d < 3; ++d) {
    y[static_cast<std::size_t>(d * 4 + 3)] = Rat(1);
    y[static_cast<std::size_t>(12 + d)] = Rat(-1);
  }
  CHECK(render_inequality(y, outcome_labels(4, 2)) == "p[1,4]+p[2,4]+p[3,4] ≤ p[4,1]+p[4,2]+p[4,3]");
  CHECK(render_marginal(y, 4, 1, outcome_labels(4, 2)) == "P(Y1∈{1,2,3}) ≤ P(Y2∈{1,2,3})");
  CHECK(render_marginal(ints({0, -1, 1, 0}), 2, 0, l2) == "P(Y1=1) ≤ P(Y2=1)");
  // Not of marginal shape: falls back.
  CHECK(render_marginal(ints({0, -1, 0, 0}), 2, 0, l2) == "0 ≤ p[0,1]");
}

TEST_CASE("run reproduces the two-period binary implications") {
  const RunReport lt = run(heuristic(ints({0, 1})));
  CHECK(lt.reduced.ys() == std::vector<Vec>{ints({0, -1, 1, 0})});
  CHECK(lt.rendered == std::vector<std::string>{"p[1,0] ≤ p[0,1]"});
  CHECK(lt.patches == 3);
  CHECK(lt.rows == 4);

  CHECK(run(heuristic(ints({1, 0}))).reduced.ys() == std::vector<Vec>{ints({0, 1, -1, 0})});
  const auto eq = run(heuristic(ints({0, 0}))).reduced.ys();
  CHECK(eq.size() == 2);
  CHECK(std::find(eq.begin(), eq.end(), ints({0, 1, -1, 0})) != eq.end());
  CHECK(std::find(eq.begin(), eq.end(), ints({0, -1, 1, 0})) != eq.end());
}

TEST_CASE("every solver agrees on a small static model") {
  RunConfig c;
  c.model = binary_static(ints({0, 1}));
  c.model.D = 3;
  c.model.v = parse_matrix("0,0;0,2;0,1");
  const auto ref = run(c).reduced.ys();
  for (Solver s : {Solver::Cutplane, Solver::Probabilistic, Solver::Oracle}) {
    c.solver = s;
    c.K = 300;
    CHECK_MESSAGE(run(c).reduced.ys() == ref, to_string(s));
  }
}

TEST_CASE("validation and gate errors") {
  RunConfig c;
  c.model.D = 1;
  c.model.v = Mat(1, 2);
  CHECK_THROWS_AS(run(c), ValidationError);

  RunConfig d;
  d.model = kpt_uncond(ints({0, 1}), Rat(1));
  d.solver = Solver::Cutplane;
  CHECK_THROWS_AS(run(d), GateRefusal);
  d.override_dynamic = true;
  CHECK_NOTHROW(run(d));

  CHECK_THROWS_AS(parse_solver("simplex"), ValidationError);
  CHECK_THROWS_AS(rat_from_json(json("x/2")), ValidationError);
}

TEST_CASE("reports round-trip through JSON and rerun from their config") {
  RunConfig c;
  c.model = two_lag(ints({0, 4, 2}), Rat(3), Rat(-4), 1, 1);
  const RunReport rep = run(c);
  const json j = to_json(rep);
  CHECK(j["dims"]["rows"] == 8);
  CHECK(j["patches"] == 8);
  const json again = to_json(report_from_json(json::parse(j.dump())));
  CHECK(again == j);
  const RunReport rerun = run(config_from_json(j["config"]));
  CHECK(rerun.reduced.ys() == rep.reduced.ys());
  CHECK(j["reduced"][0][0].is_string());

  ModelSpec s;
  s.family = Family::DynCond;
  s.D = 4;
  s.v = parse_matrix("0,0;0,3;0,5;0,7");
  s.gamma = Rat(7);
  s.y0 = 2;
  const json m = to_json(s);
  CHECK(m["y0"] == 3);
  CHECK(m["v"][1][1] == "3");
  CHECK(to_json(model_from_json(m)) == m);
}

TEST_CASE("thread budget honours the environment") {
  unsetenv("SHARPSET_THREADS");
  CHECK(thread_budget(3) == 3);
  CHECK(thread_budget(0) == 1);
  setenv("SHARPSET_THREADS", "5", 1);
  CHECK(thread_budget(3) == 5);
  setenv("SHARPSET_THREADS", "zero", 1);
  CHECK_THROWS_AS(thread_budget(3), ValidationError);
  unsetenv("SHARPSET_THREADS");
}

TEST_CASE("command line: outputs and exit codes") {
  Proc ok = sh("solve --family static --v '0,0;0,1'");
  REQUIRE(ok.code == 0);
  const json r = json::parse(ok.out);
  CHECK(r["rendered"] == json::array({"p[1,0] ≤ p[0,1]"}));
  CHECK(r["version"] == kVersion);
  for (const char* key : {"config", "patches", "dims", "raw", "reduced", "rendered", "timings_ms", "seed"})
    CHECK_MESSAGE(r.contains(key), key);

  CHECK(sh("solve --family static --v '0,1'").code == 2);  // D = 1
  CHECK(sh("solve --family nope --v '0,0;0,1'").code == 2);
  CHECK(sh("solve --bogus").code == 2);
  CHECK(sh("solve --family dyn-uncond --v '0,0;0,1' --gamma 1 --solver cutplane").code == 3);
  CHECK(sh("solve --family static --index --v 0,1 --format text --marginal").out == "P(Y1=1) ≤ P(Y2=1)\n");
  CHECK(sh("solve --family static --index --v 0,1 --no-reduce").code == 0);

  // Rerun from a saved report.
  const std::string path = "cli_test_report.json";
  REQUIRE(sh("solve --family ar2 --index --v 0,4,2 --gamma1 3 --gamma2 -4 --y0 1 --ym1 1 --out " + path).code == 0);
  std::ifstream f(path);
  const json saved = json::parse(f);
  CHECK(saved["reduced"].size() == 4);
  Proc re = sh("solve --config " + path);
  REQUIRE(re.code == 0);
  CHECK(json::parse(re.out)["reduced"] == saved["reduced"]);
  std::remove(path.c_str());

  Proc cases = sh("cases --family dyn-uncond --symmetry canonical");
  REQUIRE(cases.code == 0);
  CHECK(json::parse(cases.out)["count"] == 10);
  Proc solved = sh("cases --family static --D 3 --solve-all --threads 2");
  REQUIRE(solved.code == 0);
  const json sj = json::parse(solved.out);
  CHECK(sj["count"] == 4);
  for (const auto& e : sj["cases"]) CHECK(e.contains("rendered"));

  Proc cf = sh("closed-form --family exchangeable --v '0,4;0,3;0,2;0,1'");
  REQUIRE(cf.code == 0);
  const json cj = json::parse(cf.out);
  CHECK(cj["candidates"].size() == 69);
  CHECK(cj["reduced"].size() == 13);
  Proc dyn = sh("closed-form --family dynamic --v '0,0;0,3;0,5;0,7' --gamma 7 --y0 3");
  REQUIRE(dyn.code == 0);
  CHECK(json::parse(dyn.out)["reduced"].size() == 8);
  CHECK(sh("closed-form --family nope --v '0,0;0,1'").code == 2);

  {
    std::ofstream in("cli_test_vectors.json");
    in << "[[0,-1,1,0],[0,-2,2,0],[0,0,-1,0]]";
  }
  Proc red = sh("reduce --in cli_test_vectors.json");
  std::remove("cli_test_vectors.json");
  REQUIRE(red.code == 0);
  const json rj = json::parse(red.out);
  CHECK(rj["reduced"].size() == 1);
  CHECK(rj["removed"].size() == 2);

  Proc integ = sh("check-integrality --family static --v '0,0;0,1' --K 50");
  REQUIRE(integ.code == 0);
  CHECK(json::parse(integ.out)["evidence"] == true);

  Proc orc = sh("oracle --family static --v '0,0;0,1' --format text");
  CHECK(orc.code == 0);
  CHECK(orc.out.find("p[1,0] ≤ p[0,1]") != std::string::npos);
}
