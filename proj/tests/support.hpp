#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qstar/term.hpp"

namespace qstar::testing {

// Every syntax tree of exactly `size` nodes whose variables are drawn from
// the binders in scope (named v0, v1, ... by depth), with no well-forming
// filter. Independent of the counting enumerator in the library.
inline void raw_terms(std::size_t size, int depth, const std::function<void(const Term &)> &emit) {
  static const std::vector<std::string> constants{"0", "1", "H", "X", "CNOT"};
  const auto leaf_const = [](const std::string &c) {
    if (c == "0") return Term::bool_const(0);
    if (c == "1") return Term::bool_const(1);
    return Term::gate(c);
  };
  if (size == 0) return;
  if (size == 1) {
    for (const auto &c : constants) emit(leaf_const(c));
    for (int i = 0; i < depth; ++i) emit(Term::classical_var("v" + std::to_string(i)));
    return;
  }
  raw_terms(size - 1, depth, [&](const Term &t) {
    emit(Term::bang(t));
    emit(Term::new_(t));
    emit(Term::meas(t));
  });
  // Sequences of k terms with total size s.
  std::function<void(std::size_t, std::size_t, std::vector<Term> &, const std::function<void(std::vector<Term> &)> &)>
      seqs = [&](std::size_t k, std::size_t s, std::vector<Term> &acc, const std::function<void(std::vector<Term> &)> &f) {
        if (k == 0) {
          if (s == 0) f(acc);
          return;
        }
        for (std::size_t first = 1; first + (k - 1) <= s; ++first) {
          raw_terms(first, depth, [&](const Term &t) {
            acc.push_back(t);
            seqs(k - 1, s - first, acc, f);
            acc.pop_back();
          });
        }
      };
  std::vector<Term> acc;
  seqs(2, size - 1, acc, [&](std::vector<Term> &v) { emit(Term::app(v[0], v[1])); });
  seqs(3, size - 1, acc, [&](std::vector<Term> &v) { emit(Term::if_(v[0], v[1], v[2])); });
  for (std::size_t k = 2; k < size; ++k) seqs(k, size - 1, acc, [&](std::vector<Term> &v) { emit(Term::tuple(v)); });
  const std::string x = "v" + std::to_string(depth);
  raw_terms(size - 1, depth + 1, [&](const Term &b) {
    emit(Term::lambda(Pattern::var(x), b));
    emit(Term::lambda(Pattern::bang(x), b));
  });
  for (int k = 2; k + 1 < static_cast<int>(size); ++k) {
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back("v" + std::to_string(depth + i));
    raw_terms(size - 1, depth + k, [&](const Term &b) { emit(Term::lambda(Pattern::tuple(names), b)); });
  }
}

inline std::size_t count_news(const Term &t) {
  std::size_t n = t.is(TermKind::New) ? 1 : 0;
  for (const auto &c : t.children()) n += count_news(c);
  return n;
}

// A random syntax tree with mixed binders, quantum variables and free
// names; not necessarily well-formed.
inline Term random_term(std::mt19937_64 &rng, int budget, std::vector<std::string> &scope) {
  const auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  if (budget <= 1) {
    switch (pick(6)) {
      case 0: return Term::bool_const(pick(2));
      case 1: return Term::gate(pick(2) ? "H" : "CNOT");
      case 2: return Term::quantum_var("r" + std::to_string(pick(12)));
      case 3: return Term::classical_var("free" + std::to_string(pick(2)));
      default:
        if (scope.empty()) return Term::bool_const(1);
        return Term::classical_var(scope[static_cast<std::size_t>(pick(static_cast<int>(scope.size())))]);
    }
  }
  switch (pick(8)) {
    case 0: return Term::bang(random_term(rng, budget - 1, scope));
    case 1: return Term::new_(random_term(rng, budget - 1, scope));
    case 2: return Term::meas(random_term(rng, budget - 1, scope));
    case 3: {
      const int left = 1 + pick(budget - 1);
      Term f = random_term(rng, left, scope);
      return Term::app(f, random_term(rng, budget - left, scope));
    }
    case 4: return Term::if_(random_term(rng, budget / 3, scope), random_term(rng, budget / 3, scope),
                             random_term(rng, budget / 3, scope));
    case 5: return Term::tuple({random_term(rng, budget / 2, scope), random_term(rng, budget / 2, scope)});
    case 6: {
      // Reuse an outer name now and then to exercise shadowing.
      std::string x = !scope.empty() && pick(3) == 0 ? scope.back() : "y" + std::to_string(scope.size());
      const int kind = pick(3);
      Pattern p = kind == 0 ? Pattern::var(x) : kind == 1 ? Pattern::bang(x) : Pattern::tuple({x, x + "b"});
      for (const auto &n : p.names) scope.push_back(n);
      Term body = random_term(rng, budget - 1, scope);
      scope.resize(scope.size() - p.names.size());
      return Term::lambda(p, body);
    }
    default: return random_term(rng, budget - 1, scope);
  }
}

}  // namespace qstar::testing
