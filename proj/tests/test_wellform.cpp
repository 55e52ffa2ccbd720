#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qstar/corpus.hpp"
#include "qstar/parser.hpp"
#include "qstar/wellform.hpp"
#include "support.hpp"

using namespace qstar;

namespace {

WfErrorKind error_kind(const Environment &env, const char *src) {
  try {
    check_wf(env, parse_term(src));
  } catch (const WfError &e) {
    return e.kind();
  }
  FAIL("expected a well-forming error for " << src);
  return WfErrorKind::MalformedEnvironment;
}

bool derivable(const char *src) { return is_wf_configuration_term(parse_term(src)); }

}  // namespace

TEST_CASE("the Hadamard coin function is derived by lam3") {
  Derivation d = check_wf({}, parse_term("\\!x. if x then 0 else 1"));
  CHECK(d.rule == WfRule::Lam3);
  REQUIRE(d.premises.size() == 1);
  const Derivation &body = d.premises[0];
  CHECK(body.rule == WfRule::If);
  CHECK(body.env.banged == NameSet{"x"});
  REQUIRE(body.premises.size() == 3);
  CHECK(body.premises[0].rule == WfRule::Der);
  CHECK(body.premises[1].rule == WfRule::Const);
  CHECK(body.premises[2].rule == WfRule::Const);
  CHECK_FALSE(validate_derivation(d).has_value());
}

TEST_CASE("axioms") {
  CHECK(check_wf({.quantum = {"r"}}, parse_term("@r")).rule == WfRule::QVar);
  CHECK(check_wf({.linear_classical = {"x"}}, parse_term("x")).rule == WfRule::CVar);
  CHECK(check_wf({.banged = {"x"}}, parse_term("x")).rule == WfRule::Der);
  CHECK(check_wf({}, parse_term("H")).rule == WfRule::Const);
  CHECK(check_wf({.banged = {"y"}}, parse_term("0")).rule == WfRule::Const);
}

TEST_CASE("linearity errors") {
  CHECK(error_kind({}, "\\x. x x") == WfErrorKind::LinearUsedTwice);
  CHECK(error_kind({}, "\\x. 0") == WfErrorKind::LinearUnused);
  CHECK(error_kind({.quantum = {"r"}}, "<@r, @r>") == WfErrorKind::QuantumDuplicated);
  CHECK(error_kind({.quantum = {"r", "q"}}, "@r") == WfErrorKind::QuantumDropped);
  CHECK(error_kind({}, "@r") == WfErrorKind::QuantumNotInEnvironment);
  CHECK(error_kind({}, "\\x. !x") == WfErrorKind::NonBangedUnderBang);
  CHECK(error_kind({.quantum = {"r"}}, "!@r") == WfErrorKind::NonBangedUnderBang);
  CHECK(error_kind({}, "\\x. if 0 then x else x") == WfErrorKind::LinearInIfBranch);
  CHECK(error_kind({}, "FOO") == WfErrorKind::UnknownGate);
  CHECK(error_kind({}, "y") == WfErrorKind::UnboundVariable);
  CHECK(error_kind({.linear_classical = {"x"}, .banged = {"x"}}, "x") == WfErrorKind::MalformedEnvironment);
}

TEST_CASE("configuration terms") {
  CHECK(derivable("meas (H (new 0))"));
  CHECK(derivable("@r"));
  CHECK(derivable("(\\!x. if x then 0 else 1) (meas (H (new 0)))"));
  CHECK(derivable("\\!x. x !x"));
  CHECK(derivable("(\\!x. x !x) !(\\!x. x !x)"));
  CHECK(derivable("\\<a, b>. <b, a>"));
  CHECK(derivable("\\x. if x then 0 else 1"));
  CHECK_FALSE(derivable("\\x. x x"));
  CHECK(derivable("!(new 0) @r"));
  CHECK_FALSE(derivable("!(H @r)"));
  // A constant applied to a constant: const twice, joined by app.
  Derivation d = check_wf({}, parse_term("0 0"));
  CHECK(d.rule == WfRule::App);
  CHECK_FALSE(validate_derivation(d).has_value());
}

TEST_CASE("the validator rejects tampered derivations") {
  Derivation d = check_wf({}, parse_term("\\x. x"));
  REQUIRE_FALSE(validate_derivation(d).has_value());
  Derivation wrong_rule = d;
  wrong_rule.premises[0].rule = WfRule::Der;
  CHECK(validate_derivation(wrong_rule).has_value());
  Derivation lost_var = d;
  lost_var.premises[0].env.linear_classical.clear();
  CHECK(validate_derivation(lost_var).has_value());

  Derivation app = check_wf({.quantum = {"a", "b"}}, parse_term("<@a, @b>"));
  REQUIRE_FALSE(validate_derivation(app).has_value());
  app.premises[1].env.quantum = {"a"};
  app.premises[1].term = Term::quantum_var("a");
  CHECK(validate_derivation(app).has_value());
}

TEST_CASE("every derivation of a corpus term replays") {
  Corpus corpus = enumerated_corpus(5);
  for (const auto &c : corpus.configs) {
    Environment env;
    for (const auto &q : c.qvars()) env.quantum.insert(q);
    Derivation d = check_wf(env, c.term());
    auto problem = validate_derivation(d);
    REQUIRE_MESSAGE(!problem, print_term(c.term()) << ": " << problem.value_or(""));
  }
}

TEST_CASE("banged weakening preserves derivability") {
  Corpus corpus = enumerated_corpus(4);
  for (const auto &c : corpus.configs) {
    Derivation d = check_wf({.banged = {"unused", "other"}}, c.term());
    CHECK_FALSE(validate_derivation(d).has_value());
  }
}

TEST_CASE("well-formed closed terms match the enumerator counts") {
  // Brute force: every raw syntax tree, filtered by the checker, against the
  // independent counting enumerator.
  TermSpace space({"0", "1", "H", "X", "CNOT"});
  for (std::size_t n = 1; n <= 5; ++n) {
    std::size_t wf = 0;
    testing::raw_terms(n, 0, [&](const Term &t) {
      if (testing::count_news(t) > 3) return;
      if (is_wf_configuration_term(t)) ++wf;
    });
    std::uint64_t expected = 0;
    for (std::size_t news = 0; news <= 3; ++news) expected += space.count(n, news);
    CHECK_MESSAGE(wf == expected, "size " << n);
  }
}

TEST_CASE("the checker accepts exactly the terms with a replayable derivation") {
  std::mt19937_64 rng(17);
  std::size_t accepted = 0;
  for (int i = 0; i < 20000; ++i) {
    std::vector<std::string> scope;
    Term t = testing::random_term(rng, 2 + static_cast<int>(rng() % 14), scope);
    Environment env;
    env.quantum = free_quantum_vars(t);
    env.banged = free_classical_vars(t);
    try {
      Derivation d = check_wf(env, t);
      ++accepted;
      REQUIRE_FALSE(validate_derivation(d).has_value());
    } catch (const WfError &) {
    }
  }
  CHECK(accepted > 100);
}
