#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qstar/parser.hpp"
#include "support.hpp"

using namespace qstar;

namespace {

Term v(const char *n) { return Term::classical_var(n); }
Term c(int b) { return Term::bool_const(b); }

}  // namespace

TEST_CASE("parse the Hadamard/measure term") {
  Term t = parse_term("(\\!x. if x then 0 else 1) (meas (H (new 0)))");
  Term expected = Term::app(Term::lambda(Pattern::bang("x"), Term::if_(v("x"), c(0), c(1))),
                            Term::meas(Term::app(Term::gate("H"), Term::new_(c(0)))));
  CHECK(t == expected);
}

TEST_CASE("parse small terms") {
  CHECK(parse_term("0") == c(0));
  CHECK(parse_term("\\<x,y>. CNOT <x,y>") ==
        Term::lambda(Pattern::tuple({"x", "y"}), Term::app(Term::gate("CNOT"), Term::tuple({v("x"), v("y")}))));
  CHECK(parse_term("@r0") == Term::quantum_var("r0"));
  // Application is left-associative, ! binds tighter, lambda extends right.
  CHECK(parse_term("a b c") == Term::app(Term::app(v("a"), v("b")), v("c")));
  CHECK(parse_term("f !x y") == Term::app(Term::app(v("f"), Term::bang(v("x"))), v("y")));
  CHECK(parse_term("\\x. x y") == Term::lambda(Pattern::var("x"), Term::app(v("x"), v("y"))));
  CHECK(parse_term("-- comment\n  1 -- trailing\n") == c(1));
}

TEST_CASE("parse errors carry positions") {
  const auto fails_at = [](const char *src, int line, int column) {
    try {
      parse_term(src);
      FAIL("expected a parse error for " << src);
    } catch (const ParseError &e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
    }
  };
  fails_at("", 1, 1);
  fails_at("(0", 1, 3);
  fails_at("\n  \\x x", 2, 6);
  CHECK_THROWS_AS(parse_term("<0>"), ParseError);
  CHECK_THROWS_AS(parse_term("\\<x, x>. x"), ParseError);
  CHECK_THROWS_AS(parse_term("\\<x>. x"), ParseError);
  CHECK_THROWS_AS(parse_term("2"), ParseError);
  CHECK_THROWS_AS(parse_term("if 0 then 1"), ParseError);
}

TEST_CASE("print_term") {
  CHECK(print_term(c(1)) == "1");
  CHECK(print_term(Term::lambda(Pattern::var("x"), v("x"))) == "\\x. x");
  CHECK(print_term(Term::meas(Term::quantum_var("r0"))) == "meas @r0");
  CHECK(print_term(parse_term("(\\x.x) ((\\y.y) 0)")) == "(\\x. x) ((\\y. y) 0)");
  CHECK(print_term(parse_term("!(new 0)")) == "!(new 0)");
}

TEST_CASE("round trip over every small syntax tree") {
  std::size_t seen = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    testing::raw_terms(n, 0, [&](const Term &t) {
      ++seen;
      const std::string text = print_term(t);
      Term back = parse_term(text);
      REQUIRE_MESSAGE(back == t, text);
    });
  }
  CHECK(seen > 10000);
}

TEST_CASE("round trip over random terms") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3000; ++i) {
    std::vector<std::string> scope;
    Term t = testing::random_term(rng, 2 + static_cast<int>(rng() % 25), scope);
    Term back = parse_term(print_term(t));
    REQUIRE_MESSAGE(alpha_equivalent(back, t), print_term(t));
  }
}

TEST_CASE("free_quantum_vars") {
  CHECK(free_quantum_vars(Term::quantum_var("r0")) == NameSet{"r0"});
  CHECK(free_quantum_vars(parse_term("\\x. x")).empty());
  CHECK(free_quantum_vars(parse_term("<@a, meas @b>")) == NameSet{"a", "b"});
  CHECK(quantum_vars_in_order(parse_term("<@b, @a, \\x. @c>")) == std::vector<std::string>{"b", "a", "c"});
}

TEST_CASE("substitute") {
  CHECK(substitute(v("x"), "x", Term::quantum_var("r")) == Term::quantum_var("r"));
  CHECK(substitute(parse_term("\\x. x"), "x", c(0)) == parse_term("\\x. x"));
  CHECK(substitute(parse_term("x !x"), "x", c(1)) == parse_term("1 !1"));
  // Capture is avoided by renaming the binder.
  Term r = substitute(parse_term("\\y. x y"), "x", v("y"));
  CHECK(alpha_equivalent(r, parse_term("\\z. y z")));
  CHECK(free_classical_vars(r) == NameSet{"y"});
  // Simultaneous substitution does not cascade.
  Term s = substitute(parse_term("<x, y>"), std::map<std::string, Term>{{"x", v("y")}, {"y", v("x")}});
  CHECK(s == parse_term("<y, x>"));
}

TEST_CASE("substitution leaves terms without the variable unchanged") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    std::vector<std::string> scope;
    Term t = testing::random_term(rng, 2 + static_cast<int>(rng() % 20), scope);
    if (free_classical_vars(t).count("free1")) continue;
    CHECK(substitute(t, "free1", parse_term("\\q. q")) == t);
  }
}

TEST_CASE("alpha canonicalization is idempotent and keeps free variables") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    std::vector<std::string> scope;
    Term t = testing::random_term(rng, 2 + static_cast<int>(rng() % 20), scope);
    Term a = alpha_canonical(t);
    CHECK(alpha_canonical(a) == a);
    CHECK(free_classical_vars(a) == free_classical_vars(t));
    CHECK(free_quantum_vars(a) == free_quantum_vars(t));
    CHECK(alpha_equivalent(a, t));
    CHECK(term_size(a) == term_size(t));
  }
  CHECK(alpha_equivalent(parse_term("\\x. \\y. x y"), parse_term("\\a. \\b. a b")));
  CHECK_FALSE(alpha_equivalent(parse_term("\\x. \\y. x y"), parse_term("\\a. \\b. b a")));
  CHECK_FALSE(alpha_equivalent(parse_term("\\x. x"), parse_term("\\!x. x")));
}

TEST_CASE("sizes") {
  CHECK(term_size(parse_term("\\x. x")) == 2);
  CHECK(term_size(parse_term("(\\x. x) 0")) == 4);
  CHECK(term_size(parse_term("\\<a, b>. <a, b>")) == 4);
  CHECK(abstraction_size(parse_term("\\x. x")) == 1);
  CHECK(abstraction_size(parse_term("(\\x. x 0) (\\y. y)")) == 4);
  CHECK(abstraction_size(parse_term("\\x. \\y. x y")) == 3 + 4);
}

TEST_CASE("natural order and fresh names") {
  CHECK(natural_less("r2", "r10"));
  CHECK_FALSE(natural_less("r10", "r2"));
  CHECK(natural_less("a", "b"));
  CHECK(fresh_name("x", {"x", "x1"}) == "x2");
  CHECK(fresh_name("y3", {"y3"}) == "y1");
}
