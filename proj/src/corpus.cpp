#include "qstar/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "qstar/parser.hpp"
#include "qstar/reduction.hpp"
#include "qstar/wellform.hpp"

namespace qstar {

namespace {

constexpr int kMaxDepth = 20;

std::string var_name(int i) { return "x" + std::to_string(i); }

Term constant(const std::string &c) {
  if (c == "0") return Term::bool_const(0);
  if (c == "1") return Term::bool_const(1);
  return Term::gate(c);
}

std::uint32_t range_bits(int from, int count) { return ((std::uint32_t{1} << count) - 1) << from; }

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// The rank-th size-k subset of `mask` in colexicographic order of positions.
std::uint32_t unrank_subset(std::uint32_t mask, int k, std::uint64_t rank) {
  std::vector<int> bits;
  for (int i = 0; i < 32; ++i) {
    if (mask >> i & 1) bits.push_back(i);
  }
  std::uint32_t out = 0;
  for (int i = static_cast<int>(bits.size()) - 1; i >= 0 && k > 0; --i) {
    const std::uint64_t below = binomial(i, k);
    if (rank >= below) {
      rank -= below;
      out |= std::uint32_t{1} << bits[static_cast<std::size_t>(i)];
      --k;
    }
  }
  return out;
}

int popcount(std::uint32_t x) { return __builtin_popcount(x); }

}  // namespace

TermSpace::TermSpace(std::vector<std::string> constants) : constants_(std::move(constants)) {}

std::uint64_t TermSpace::count(std::size_t size, int news) { return count(size, Ctx{0, 0, 0}, news); }

Term TermSpace::unrank(std::size_t size, int news, std::uint64_t index) {
  if (index >= count(size, news)) throw CorpusError("term index out of range");
  return unrank(size, Ctx{0, 0, 0}, news, index);
}

// Counts depend only on how many banged and linear variables are in scope
// (and on the remaining binder headroom), not on which ones.
std::uint64_t TermSpace::key(std::size_t parts, std::size_t n, const Ctx &ctx, int news) {
  return (static_cast<std::uint64_t>(parts) << 48) | (static_cast<std::uint64_t>(n) << 40) |
         (static_cast<std::uint64_t>(kMaxDepth - ctx.depth) << 32) | (static_cast<std::uint64_t>(news) << 24) |
         (static_cast<std::uint64_t>(popcount(ctx.banged)) << 8) | static_cast<std::uint64_t>(popcount(ctx.linear));
}

// Alternatives are visited in one fixed order by both count and unrank:
// leaves, !, new, meas, application, if, tuples, lambda x, lambda !x,
// lambda <...>. A split of the linear set into a first part of j variables
// contributes C(|L|, j) equal blocks.
std::uint64_t TermSpace::count(std::size_t n, const Ctx &ctx, int news) {
  if (n == 0 || news < 0) return 0;
  const std::uint64_t k = key(0, n, ctx, news);
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  const int nl = popcount(ctx.linear);
  std::uint64_t total = 0;
  if (n == 1) {
    if (news == 0) {
      if (nl == 0) total += constants_.size() + static_cast<std::uint64_t>(popcount(ctx.banged));
      else if (nl == 1) total += 1;
    }
  } else {
    if (nl == 0) total += count(n - 1, ctx, news);
    total += count(n - 1, ctx, news - 1);
    total += count(n - 1, ctx, news);
    total += count_seq(2, n - 1, ctx, news);
    for (std::size_t n1 = 1; n1 + 2 < n; ++n1) {
      for (int k1 = 0; k1 <= news; ++k1) {
        const std::uint64_t a = count(n1, ctx, k1);
        if (a) total += a * count_seq(2, n - 1 - n1, Ctx{ctx.depth, ctx.banged, 0}, news - k1);
      }
    }
    for (std::size_t m = 2; m < n; ++m) total += count_seq(m, n - 1, ctx, news);
    if (ctx.depth < kMaxDepth) {
      total += count(n - 1, Ctx{ctx.depth + 1, ctx.banged, ctx.linear | range_bits(ctx.depth, 1)}, news);
      total += count(n - 1, Ctx{ctx.depth + 1, ctx.banged | range_bits(ctx.depth, 1), ctx.linear}, news);
    }
    for (int m = 2; m + 1 < static_cast<int>(n) && ctx.depth + m <= kMaxDepth; ++m) {
      total += count(n - 1, Ctx{ctx.depth + m, ctx.banged, ctx.linear | range_bits(ctx.depth, m)}, news);
    }
  }
  memo_.emplace(k, total);
  return total;
}

// Sequences of `parts` terms of total size n splitting the linear set.
// Applications are the two-part case.
std::uint64_t TermSpace::count_seq(std::size_t parts, std::size_t n, const Ctx &ctx, int news) {
  if (parts == 1) return count(n, ctx, news);
  if (n < parts || news < 0) return 0;
  const std::uint64_t k = key(parts, n, ctx, news);
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  const int nl = popcount(ctx.linear);
  // Any j-subset stands for all of them.
  std::vector<std::uint32_t> first(static_cast<std::size_t>(nl) + 1);
  for (int j = 0; j <= nl; ++j) first[static_cast<std::size_t>(j)] = unrank_subset(ctx.linear, j, 0);
  std::uint64_t total = 0;
  for (std::size_t n1 = 1; n1 + parts - 1 <= n; ++n1) {
    for (int j = 0; j <= nl; ++j) {
      const std::uint32_t l1 = first[static_cast<std::size_t>(j)];
      for (int k1 = 0; k1 <= news; ++k1) {
        const std::uint64_t a = count(n1, Ctx{ctx.depth, ctx.banged, l1}, k1);
        if (a) {
          total += binomial(nl, j) * a *
                   count_seq(parts - 1, n - n1, Ctx{ctx.depth, ctx.banged, ctx.linear & ~l1}, news - k1);
        }
      }
    }
  }
  memo_.emplace(k, total);
  return total;
}

std::vector<Term> TermSpace::unrank_seq(std::size_t parts, std::size_t n, const Ctx &ctx, int news,
                                        std::uint64_t index) {
  if (parts == 1) return {unrank(n, ctx, news, index)};
  const int nl = popcount(ctx.linear);
  for (std::size_t n1 = 1; n1 + parts - 1 <= n; ++n1) {
    for (int j = 0; j <= nl; ++j) {
      const std::uint32_t probe = unrank_subset(ctx.linear, j, 0);
      for (int k1 = 0; k1 <= news; ++k1) {
        const std::uint64_t a = count(n1, Ctx{ctx.depth, ctx.banged, probe}, k1);
        const std::uint64_t b =
            a ? count_seq(parts - 1, n - n1, Ctx{ctx.depth, ctx.banged, ctx.linear & ~probe}, news - k1) : 0;
        const std::uint64_t block = a * b;
        const std::uint64_t subsets = binomial(nl, j);
        if (index < block * subsets) {
          const std::uint32_t l1 = unrank_subset(ctx.linear, j, index / block);
          index %= block;
          const Ctx c1{ctx.depth, ctx.banged, l1};
          const Ctx c2{ctx.depth, ctx.banged, ctx.linear & ~l1};
          std::vector<Term> out{unrank(n1, c1, k1, index / b)};
          for (auto &t : unrank_seq(parts - 1, n - n1, c2, news - k1, index % b)) out.push_back(std::move(t));
          return out;
        }
        index -= block * subsets;
      }
    }
  }
  throw CorpusError("internal: sequence index out of range");
}

Term TermSpace::unrank(std::size_t n, const Ctx &ctx, int news, std::uint64_t index) {
  const auto take = [&](std::uint64_t available) {
    if (index < available) return true;
    index -= available;
    return false;
  };
  if (n == 1) {
    if (ctx.linear == 0) {
      if (index < constants_.size()) return constant(constants_[index]);
      index -= constants_.size();
      for (int i = 0; i < ctx.depth; ++i) {
        if ((ctx.banged >> i & 1) && index-- == 0) return Term::classical_var(var_name(i));
      }
    } else {
      return Term::classical_var(var_name(__builtin_ctz(ctx.linear)));
    }
    throw CorpusError("internal: leaf index out of range");
  }
  if (ctx.linear == 0 && take(count(n - 1, ctx, news))) return Term::bang(unrank(n - 1, ctx, news, index));
  if (take(count(n - 1, ctx, news - 1))) return Term::new_(unrank(n - 1, ctx, news - 1, index));
  if (take(count(n - 1, ctx, news))) return Term::meas(unrank(n - 1, ctx, news, index));
  if (take(count_seq(2, n - 1, ctx, news))) {
    auto parts = unrank_seq(2, n - 1, ctx, news, index);
    return Term::app(parts[0], parts[1]);
  }
  for (std::size_t n1 = 1; n1 + 2 < n; ++n1) {
    for (int k1 = 0; k1 <= news; ++k1) {
      const Ctx branches{ctx.depth, ctx.banged, 0};
      const std::uint64_t a = count(n1, ctx, k1);
      const std::uint64_t b = a ? count_seq(2, n - 1 - n1, branches, news - k1) : 0;
      if (take(a * b)) {
        auto rest = unrank_seq(2, n - 1 - n1, branches, news - k1, index % b);
        return Term::if_(unrank(n1, ctx, k1, index / b), rest[0], rest[1]);
      }
    }
  }
  for (std::size_t m = 2; m < n; ++m) {
    if (take(count_seq(m, n - 1, ctx, news))) return Term::tuple(unrank_seq(m, n - 1, ctx, news, index));
  }
  if (ctx.depth < kMaxDepth) {
    const Ctx lin{ctx.depth + 1, ctx.banged, ctx.linear | range_bits(ctx.depth, 1)};
    if (take(count(n - 1, lin, news))) return Term::lambda(Pattern::var(var_name(ctx.depth)), unrank(n - 1, lin, news, index));
    const Ctx bang{ctx.depth + 1, ctx.banged | range_bits(ctx.depth, 1), ctx.linear};
    if (take(count(n - 1, bang, news))) return Term::lambda(Pattern::bang(var_name(ctx.depth)), unrank(n - 1, bang, news, index));
  }
  for (int m = 2; m + 1 < static_cast<int>(n) && ctx.depth + m <= kMaxDepth; ++m) {
    const Ctx tup{ctx.depth + m, ctx.banged, ctx.linear | range_bits(ctx.depth, m)};
    if (take(count(n - 1, tup, news))) {
      std::vector<std::string> names;
      for (int i = 0; i < m; ++i) names.push_back(var_name(ctx.depth + i));
      return Term::lambda(Pattern::tuple(std::move(names)), unrank(n - 1, tup, news, index));
    }
  }
  throw CorpusError("internal: term index out of range");
}

std::uint64_t count_closed_terms(std::size_t size, int max_new) {
  TermSpace space;
  std::uint64_t total = 0;
  for (int k = 0; k <= max_new; ++k) total += space.count(size, k);
  return total;
}

Corpus enumerated_corpus(std::size_t size_bound, int max_new) {
  if (size_bound > kMaxEnumerationSize) {
    throw CorpusError("enumeration bound " + std::to_string(size_bound) + " exceeds the maximum of " +
                      std::to_string(kMaxEnumerationSize));
  }
  TermSpace space;
  Corpus out;
  out.provenance = "enumerated(" + std::to_string(size_bound) + ")";
  for (std::size_t n = 1; n <= size_bound; ++n) {
    for (int k = 0; k <= max_new; ++k) {
      const std::uint64_t total = space.count(n, k);
      for (std::uint64_t i = 0; i < total; ++i) {
        out.configs.emplace_back(space.unrank(n, k, i));
        out.sizes.push_back(n);
      }
    }
  }
  return out;
}

Corpus random_corpus(std::uint64_t seed, std::size_t size_bound, std::size_t per_size, int max_new,
                     std::size_t min_redexes) {
  if (size_bound > kMaxEnumerationSize) {
    throw CorpusError("size bound " + std::to_string(size_bound) + " exceeds the maximum of " +
                      std::to_string(kMaxEnumerationSize));
  }
  TermSpace space;
  std::mt19937_64 rng(seed);
  Corpus out;
  out.provenance = "random(" + std::to_string(seed) + ", " + std::to_string(size_bound) + ")";
  if (min_redexes > 0) out.provenance += " with >= " + std::to_string(min_redexes) + " redexes";
  const auto accept = [&](const Term &t) { return min_redexes == 0 || enumerate_redexes(t).size() >= min_redexes; };
  for (std::size_t n = 1; n <= size_bound; ++n) {
    std::vector<std::uint64_t> per_news;
    std::uint64_t total = 0;
    for (int k = 0; k <= max_new; ++k) {
      per_news.push_back(space.count(n, k));
      total += per_news.back();
    }
    const auto term_at = [&](std::uint64_t i) {
      int k = 0;
      while (i >= per_news[static_cast<std::size_t>(k)]) i -= per_news[static_cast<std::size_t>(k++)];
      return space.unrank(n, k, i);
    };
    std::set<std::uint64_t> seen;
    std::vector<Term> picked;
    if (total <= per_size * 4) {
      // Small sizes: take every qualifying term, then thin uniformly.
      for (std::uint64_t i = 0; i < total; ++i) {
        Term t = term_at(i);
        if (accept(t)) picked.push_back(std::move(t));
      }
      std::shuffle(picked.begin(), picked.end(), rng);
      if (picked.size() > per_size) picked.resize(per_size);
    } else {
      std::uniform_int_distribution<std::uint64_t> dist(0, total - 1);
      const std::size_t max_draws = per_size * 20000;
      for (std::size_t draws = 0; picked.size() < per_size && draws < max_draws; ++draws) {
        const std::uint64_t i = dist(rng);
        if (!seen.insert(i).second) continue;
        Term t = term_at(i);
        if (accept(t)) picked.push_back(std::move(t));
      }
    }
    for (auto &t : picked) {
      out.configs.emplace_back(std::move(t));
      out.sizes.push_back(n);
    }
  }
  return out;
}

std::string hadamard_example() { return "(\\!x. if x then 0 else 1) (meas (H (new 0)))"; }

std::string bounded_coin(int rounds) {
  if (rounds < 1) throw CorpusError("a coin needs at least one round");
  std::string t = "1";
  for (int i = 0; i < rounds; ++i) t = "(\\!x. if x then 0 else " + t + ") (meas (H (new 0)))";
  return t;
}

std::string fixpoint_coin() {
  return "(\\!f. (\\!z. f !(z !z)) !(\\!z. f !(z !z))) "
         "!(\\!f. \\!x. if x then 0 else f (meas (H (new 0)))) (meas (H (new 0)))";
}

Corpus paper_examples() {
  Corpus out;
  out.provenance = "paper_examples";
  const auto add = [&](Configuration c) {
    out.sizes.push_back(term_size(c.term()));
    out.configs.push_back(std::move(c));
  };
  add(Configuration(parse_term(hadamard_example())));
  for (int k = 1; k <= 4; ++k) add(Configuration(parse_term(bounded_coin(k))));
  add(Configuration(parse_term(fixpoint_coin())));
  add(Configuration(parse_term("(\\<a, b>. <meas a, meas b>) (CNOT <H (new 0), new 0>)")));
  add(Configuration(parse_term("(\\x. x) 0 1")));
  add(Configuration(parse_term("(\\x. (\\y. y) x) ((\\z. z) 1)")));
  const double h = 1 / std::sqrt(2.0);
  add(Configuration(QuantumRegister::from_amplitudes({"q", "r"}, {h, 0, 0, h}), parse_term("<meas @r, meas @q>")));
  add(Configuration(QuantumRegister::from_amplitudes({"r"}, {h, h}), parse_term("meas @r")));
  add(Configuration(QuantumRegister::from_amplitudes({"a", "b"}, {0.6, 0, 0, 0.8}),
                    parse_term("(\\<x, y>. <meas x, meas y>) (CNOT <@a, @b>)")));
  return out;
}

Corpus clause_examples() {
  Corpus out;
  out.provenance = "clause_examples";
  const double h = 1 / std::sqrt(2.0);
  const std::vector<std::pair<QuantumRegister, std::string>> items{
      {{}, "((\\x. x) 0) ((\\y. y) 1)"},
      {{}, "(\\y. y) ((\\x. x) 0)"},
      {{}, "((\\x. x) (meas (H (new 0)))) 1"},
      {{}, "(\\x. x) ((\\y. y) (meas (H (new 1))))"},
      {{}, "<(\\x. x) 0, (\\y. y) 1>"},
      {{}, "<meas (H (new 0)), (\\x. x) 0>"},
      {{}, "<meas (H (new 0)), meas (H (new 1))>"},
      {{}, "(\\!x. if x then meas (H (new 0)) else meas (new 1)) (meas (H (new 0)))"},
      {QuantumRegister::from_amplitudes({"q", "r"}, {0.5, 0.5, 0.5, -0.5}), "<meas @r, meas @q>"},
      {QuantumRegister::from_amplitudes({"q", "r"}, {h, 0, 0, h}), "<meas @q, (\\x. x) (meas @r)>"},
      {QuantumRegister::from_amplitudes({"q", "r"}, {0.6, 0, 0, 0.8}), "((\\x. x) (meas @q)) (meas @r)"},
      {QuantumRegister::from_amplitudes({"a", "b", "c"}, {0.5, 0, 0, 0.5, 0, 0.5, 0.5, 0}),
       "<meas @a, CNOT <@b, @c>>"},
      {QuantumRegister::from_amplitudes({"q"}, {1, 0}), "<meas @q, H (new 1)>"},
  };
  for (const auto &[reg, src] : items) {
    Configuration c(reg, parse_term(src));
    out.sizes.push_back(term_size(c.term()));
    out.configs.push_back(std::move(c));
  }
  return out;
}

}  // namespace qstar
