#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "qstar/harness.hpp"
#include "qstar/parser.hpp"
#include "qstar/wellform.hpp"

using namespace qstar;

namespace {

Configuration conf(const std::string &src) { return Configuration(parse_term(src)); }

const double kS = 1 / std::sqrt(2.0);

}  // namespace

TEST_CASE("closed term counts") {
  const std::uint64_t expected[] = {5, 22, 145, 1341, 14093, 159177, 1905825, 23890583, 310724019, 4170279742ULL,
                                    57583796146ULL, 817040903243ULL};
  for (std::size_t n = 1; n <= 12; ++n) CHECK(count_closed_terms(n) == expected[n - 1]);
  CHECK_THROWS_AS(enumerated_corpus(kMaxEnumerationSize + 1), CorpusError);
}

TEST_CASE("enumeration lists distinct well-formed terms") {
  Corpus c = enumerated_corpus(6);
  CHECK(c.configs.size() == 5 + 22 + 145 + 1341 + 14093 + 159177);
  std::set<std::string> keys;
  for (std::size_t i = 0; i < c.configs.size(); ++i) {
    CHECK(term_size(c.configs[i].term()) == c.sizes[i]);
    keys.insert(c.configs[i].key());
  }
  CHECK(keys.size() == c.configs.size());
  CHECK(keys.count(conf("(\\x. x) 0").key()));
  CHECK(keys.count(conf("0 0").key()));
  CHECK(keys.count(conf("new 0").key()));
  CHECK(c.provenance == "enumerated(6)");
}

TEST_CASE("random corpus conditioning") {
  Corpus a = random_corpus(9, 10, 25, 3, 2);
  Corpus b = random_corpus(9, 10, 25, 3, 2);
  REQUIRE(a.configs.size() == b.configs.size());
  for (std::size_t i = 0; i < a.configs.size(); ++i) CHECK(a.configs[i].key() == b.configs[i].key());
  for (const auto &c : a.configs) {
    CHECK(enumerate_redexes(c).size() >= 2);
    CHECK(is_wf_configuration_term(c.term()));
  }
  // Fewer qualifying terms than requested: all of them.
  Corpus small = random_corpus(1, 4, 1000, 3, 2);
  std::size_t qualifying = 0;
  for (const auto &c : enumerated_corpus(4).configs) qualifying += enumerate_redexes(c).size() >= 2;
  CHECK(small.configs.size() == qualifying);
}

TEST_CASE("paper examples are well formed") {
  Corpus p = paper_examples();
  CHECK(p.configs.size() >= 10);
  for (const auto &c : p.configs) CHECK(is_wf_configuration_term(c.term()));
}

TEST_CASE("quasi-diamond examples") {
  Configuration two(QuantumRegister::from_amplitudes({"q", "r"}, {0.5, 0.5, 0.5, -0.5}), parse_term("<meas @r, meas @q>"));
  DiamondReport d = check_quasi_diamond(two);
  CHECK(d.pairs == 4);
  CHECK(d.ok());

  Configuration bell(QuantumRegister::from_amplitudes({"q", "r"}, {kS, 0, 0, kS}), parse_term("<meas @r, meas @q>"));
  CHECK(check_quasi_diamond(bell).ok());

  // An l.cm frame around an inner beta redex.
  DiamondReport k = check_quasi_diamond(conf("(\\y. y) ((\\x. x) 0)"));
  CHECK(k.pairs == 3);
  CHECK(k.ok());

  SubjectReductionLog log;
  for (const auto &c : paper_examples().configs) CHECK(check_quasi_diamond(c, GateRegistry::builtin(), &log).ok());
  CHECK(log.checked() > 0);
  CHECK(log.violations() == 0);
}

TEST_CASE("the diamond check rejects a duplicating non-linear term") {
  // Not well formed: the argument is used twice, so reducing the beta redex
  // first allocates two qubits while reducing new first shares one.
  DiamondReport d = check_quasi_diamond(conf("(\\x. <x, x>) (new 0)"));
  CHECK_FALSE(d.ok());
  REQUIRE_FALSE(d.failures.empty());
  SubjectReductionLog log;
  log.record(conf("0"), conf("(\\x. x x)"), "l.beta");
  CHECK(log.violations() == 1);
  CHECK(log.witnesses().size() == 1);
}

TEST_CASE("strong confluence on small examples") {
  for (const auto &src : {hadamard_example(), bounded_coin(3), std::string("(\\<a, b>. <meas a, meas b>) (CNOT <H (new 0), new 0>)"),
                          std::string("<(\\x. x) 0, (\\y. y) ((\\z. z) 1)>")}) {
    ConfluenceReport r = check_strong_confluence(conf(src), standard_strategies(5), 64);
    CHECK_FALSE(r.inconclusive);
    CHECK(r.ok());
    CHECK(r.max_distance <= 1e-12);
    CHECK(r.strategies.size() == 5);
  }
  ConfluenceReport y = check_strong_confluence(conf(fixpoint_coin()), standard_strategies(5), 30);
  CHECK(y.inconclusive);
}

TEST_CASE("a pure classical term with three redexes") {
  Configuration c = conf("<(\\x. x) 0, (\\y. y) 1, if 1 then H else X>");
  REQUIRE(enumerate_redexes(c).size() == 3);
  ConfluenceReport r = check_strong_confluence(c, standard_strategies(1), 64);
  REQUIRE(r.ok());
  for (const auto &d : r.distributions) {
    REQUIRE(d.size() == 1);
    CHECK(d[0].config == conf("<0, 1, H>"));
    CHECK(d[0].probability == 1);
  }
}

TEST_CASE("total variation") {
  std::vector<LeafOutcome> a{{conf("0"), 0.5, 1}, {conf("1"), 0.5, 1}};
  std::vector<LeafOutcome> b{{conf("1"), 0.5, 1}, {conf("0"), 0.5, 1}};
  std::vector<LeafOutcome> c{{conf("0"), 1.0, 1}};
  std::vector<LeafOutcome> d{{conf("H"), 1.0, 1}};
  CHECK(total_variation(a, b) == 0);
  CHECK(total_variation(a, c) == doctest::Approx(0.5));
  CHECK(total_variation(c, d) == doctest::Approx(1.0));
}

TEST_CASE("K termination") {
  CHECK(check_K_termination(conf("(\\x. x) 0")).longest == 0);
  KTerminationReport r = check_K_termination(conf("((\\x. x) 0) 1"));
  CHECK(r.longest == 1);
  CHECK(r.ok());
  KTerminationReport nested = check_K_termination(conf("H (((\\x. x) 0) ((\\y. y) 1))"));
  CHECK(nested.ok());
  CHECK(nested.longest >= 3);
  CHECK(nested.longest < nested.size * nested.size);
  for (const auto &c : enumerated_corpus(6).configs) REQUIRE(check_K_termination(c).ok());
}

TEST_CASE("mixed/tree agreement") {
  for (const auto &c : paper_examples().configs) {
    for (const Strategy &s : {Strategy::leftmost(), Strategy::rightmost()}) {
      AgreementReport a = check_mixed_tree_agreement(c, s, 64);
      CHECK(a.ok());
      CHECK(a.monotone);
    }
  }
}

TEST_CASE("measurement algebra") {
  AlgebraReport r = check_measurement_algebra(1, 200);
  CHECK(r.ok());
  CHECK(r.registers == 200);
  CHECK(r.max_error < 1e-12);
}

TEST_CASE("verify runs every suite") {
  VerifyOptions o;
  o.size = 4;
  o.sample_size = 7;
  o.per_size = 10;
  o.algebra_registers = 50;
  auto results = run_verify(o);
  std::vector<std::string> names;
  for (const auto &r : results) {
    names.push_back(r.name);
    // The hand-written clause examples include the K/K counterexample.
    if (r.name == "diamond") {
      CHECK(r.failures == 1);
      CHECK(r.witnesses[0].rfind("clause 1 l.cm/r.cm", 0) == 0);
    } else {
      CHECK_MESSAGE(r.ok(), r.name);
    }
    CHECK(r.checked > 0);
  }
  CHECK(names == std::vector<std::string>{"diamond", "confluence", "ktermination", "mixed", "measurement-algebra",
                                          "subject-reduction"});
  CHECK(to_json(results[0])["suite"] == "diamond");
  o.suite = "nonsense";
  CHECK_THROWS_AS(run_verify(o), std::invalid_argument);
}

TEST_CASE("the K/K clause fails on two overlapping commutation frames") {
  // ((\x. x) 0) ((\y. y) 1): l.cm and r.cm at the root lead to reducts whose
  // only K steps reach different terms.
  Configuration c = conf("((\\x. x) 0) ((\\y. y) 1)");
  DiamondReport d = check_quasi_diamond(c);
  CHECK(d.by_clause[1] == 1);
  REQUIRE(d.failures.size() == 1);
  CHECK(d.failures[0].clause == 1);

  auto rs = enumerate_redexes(c);
  REQUIRE(rs.size() >= 2);
  CHECK(rs[0].label.kind == LabelKind::LCm);
  CHECK(rs[1].label.kind == LabelKind::RCm);
  Configuration dd = contract(c, rs[0])[0].result, ee = contract(c, rs[1])[0].result;
  CHECK(dd == conf("(\\y. ((\\x. x) 0) y) 1"));
  CHECK(ee == conf("(\\x. x ((\\y. y) 1)) 0"));
  const auto k_reducts = [](const Configuration &x) {
    std::vector<Configuration> out;
    for (const auto &s : one_step_reducts(x))
      if (s.label.in_K()) out.push_back(s.result);
    return out;
  };
  auto kd = k_reducts(dd), ke = k_reducts(ee);
  REQUIRE(kd.size() == 1);
  REQUIRE(ke.size() == 1);
  CHECK(kd[0] == conf("(\\y. (\\x. x y) 0) 1"));
  CHECK(ke[0] == conf("(\\x. (\\y. x y) 1) 0"));
  CHECK_FALSE(kd[0] == ke[0]);

  // Strong confluence is unaffected: every strategy reaches 0 1.
  ConfluenceReport r = check_strong_confluence(c, standard_strategies(3), 64);
  CHECK(r.ok());
  CHECK(r.distributions[0][0].config == conf("0 1"));
}
