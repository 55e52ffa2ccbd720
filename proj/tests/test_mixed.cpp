#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "qstar/corpus.hpp"
#include "qstar/mixed.hpp"
#include "qstar/parser.hpp"

using namespace qstar;

namespace {

Configuration conf(const std::string &src) { return Configuration(parse_term(src)); }

const double kS = 1 / std::sqrt(2.0);

// Distribution over normal-form keys of a maximal tree, by direct recursion.
void tree_mass(const ProbComputation &p, double mass, std::map<std::string, double> &out) {
  if (p.kind == ProbComputation::Kind::Leaf) {
    if (!p.config.register_().is_zero()) out[p.config.key()] += mass;
    return;
  }
  if (p.kind == ProbComputation::Kind::Unary) return tree_mass(p.children[0], mass, out);
  tree_mass(p.children[0], mass * p.p, out);
  tree_mass(p.children[1], mass * p.q, out);
}

}  // namespace

TEST_CASE("normal forms are fixpoints") {
  MixedState m = MixedState::point(conf("0"));
  Strategy s = Strategy::leftmost();
  MixedState n = mixed_step(m, s);
  REQUIRE(n.size() == 1);
  CHECK(n.entries()[0].probability == 1);
  auto run = run_mixed(m, Strategy::rightmost(), 3);
  CHECK(run.size() == 4);
  for (const auto &st : run) CHECK(st.entries()[0].config == conf("0"));
}

TEST_CASE("measurement splits an entry") {
  Configuration plus(QuantumRegister::from_amplitudes({"r0"}, {kS, kS}), parse_term("meas @r0"));
  Strategy s = Strategy::leftmost();
  MixedState m = mixed_step(MixedState::point(plus), s);
  REQUIRE(m.size() == 2);
  CHECK(observe(m, conf("!0")) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(observe(m, conf("!1")) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(observe(m, conf("0")) == 0);
  CHECK_THROWS_AS(observe(m, plus), MeasureError);
}

TEST_CASE("equal configurations merge on insert") {
  MixedState m;
  m.add(conf("(\\x. x) 0"), 0.5);
  m.add(conf("(\\y. y) 0"), 0.5);
  REQUIRE(m.size() == 1);
  CHECK(m.entries()[0].probability == 1);
  m.validate();
  MixedState bad;
  bad.add(conf("0"), 0.7);
  CHECK_THROWS_AS(bad.validate(), MixedStateError);
  Strategy s = Strategy::leftmost();
  CHECK_THROWS_AS(mixed_step(bad, s), MixedStateError);
}

TEST_CASE("tiny probabilities are kept and reported") {
  MixedState m;
  m.add(conf("0"), 1 - 1e-14);
  m.add(conf("1"), 1e-14);
  CHECK(m.size() == 2);
  REQUIRE(m.negligible().size() == 1);
  CHECK(m.negligible()[0].config == conf("1"));
  CHECK(m.sorted()[0].config == conf("0"));
}

TEST_CASE("the Hadamard coin") {
  auto run = run_mixed(MixedState::point(conf(hadamard_example())), Strategy::leftmost(), 6);
  const MixedState &last = run.back();
  CHECK(last.all_normal());
  CHECK(observe(last, conf("0")) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(observe(last, conf("1")) == doctest::Approx(0.5).epsilon(1e-12));
  ObserveSeries s = limit_observe(MixedState::point(conf(hadamard_example())), Strategy::leftmost(), conf("0"),
                                  {1, 2, 3, 4, 5, 6});
  CHECK(s.values.back() == doctest::Approx(0.5));
  CHECK(s.stabilized);
  CHECK(s.last_increment == 0);
}

TEST_CASE("Bell pair marginals do not depend on the strategy") {
  const std::string bell = "(\\<a, b>. <meas a, meas b>) (CNOT <H (new 0), new 0>)";
  auto l = run_mixed(MixedState::point(conf(bell)), Strategy::leftmost(), 20).back();
  auto r = run_mixed(MixedState::point(conf(bell)), Strategy::rightmost(), 20).back();
  REQUIRE(l.all_normal());
  REQUIRE(r.all_normal());
  for (const char *out : {"<!0, !0>", "<!1, !1>", "<!0, !1>", "<!1, !0>"}) {
    CHECK(std::abs(observe(l, conf(out)) - observe(r, conf(out))) < 1e-9);
  }
  CHECK(observe(l, conf("<!0, !0>")) == doctest::Approx(0.5));
  CHECK(observe(l, conf("<!0, !1>")) == 0);
}

TEST_CASE("mixed computations agree with trees on the corpus") {
  Corpus corpus = paper_examples();
  Corpus sample = random_corpus(2, 11, 40, 3, 2);
  corpus.configs.insert(corpus.configs.end(), sample.configs.begin(), sample.configs.end());
  std::size_t compared = 0;
  for (const auto &c : corpus.configs) {
    ProbComputation t = build_computation(c, Strategy::leftmost(), 64);
    if (!t.is_maximal()) continue;
    std::map<std::string, double> expected;
    tree_mass(t, 1.0, expected);
    for (const Strategy &s : {Strategy::leftmost(), Strategy::rightmost(), Strategy::random(4)}) {
      auto run = run_mixed(MixedState::point(c), s, 64);
      REQUIRE(run.back().all_normal());
      std::map<std::string, double> got;
      for (const auto &e : run.back().entries())
        if (!e.config.register_().is_zero()) got[e.config.key()] += e.probability;
      for (const auto &[k, p] : expected) CHECK(std::abs(got[k] - p) < 1e-9);
      for (const auto &[k, p] : got) CHECK(std::abs(expected[k] - p) < 1e-9);
      // Observation never decreases along the computation.
      for (const auto &e : run.back().entries()) {
        double prev = 0;
        for (const auto &st : run) {
          const double now = observe(st, e.config);
          CHECK(now >= prev - 1e-12);
          prev = now;
        }
      }
      for (const auto &st : run) CHECK(std::abs(st.total() - 1) < 1e-9);
    }
    ++compared;
  }
  CHECK(compared > 30);
}

TEST_CASE("the fixpoint coin converges geometrically") {
  std::vector<std::size_t> schedule;
  for (std::size_t k = 1; k <= 400; ++k) schedule.push_back(k);
  ObserveSeries s = limit_observe(MixedState::point(conf(fixpoint_coin())), Strategy::leftmost(), conf("0"), schedule);
  std::vector<double> rounds;
  for (double v : s.values)
    if (v > 0 && (rounds.empty() || v > rounds.back())) rounds.push_back(v);
  REQUIRE(rounds.size() >= 10);
  for (int n = 1; n <= 10; ++n) CHECK(std::abs(rounds[static_cast<std::size_t>(n - 1)] - (1 - std::ldexp(1.0, -n))) < 1e-9);
  CHECK_FALSE(s.stabilized);
}

TEST_CASE("json form") {
  auto run = run_mixed(MixedState::point(conf(hadamard_example())), Strategy::leftmost(), 6);
  nlohmann::json j = to_json(run.back());
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["probability"].get<double>() == doctest::Approx(0.5));
}
