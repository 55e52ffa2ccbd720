#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "qstar/configuration.hpp"

namespace qstar {

inline constexpr std::size_t kMaxEnumerationSize = 14;

/// Well-formed closed terms of an exact AST size and an exact number of
/// `new` nodes, counted and unranked by dynamic programming. Bound
/// variables are named x0, x1, ... by binding depth.
class TermSpace {
 public:
  explicit TermSpace(std::vector<std::string> constants = {"0", "1", "H", "X", "CNOT"});

  std::uint64_t count(std::size_t size, int news);
  /// The index-th term, 0 <= index < count(size, news), in a fixed order.
  Term unrank(std::size_t size, int news, std::uint64_t index);

 private:
  struct Ctx {
    int depth;
    std::uint32_t banged;
    std::uint32_t linear;
  };

  std::uint64_t count(std::size_t n, const Ctx &ctx, int news);
  std::uint64_t count_seq(std::size_t parts, std::size_t n, const Ctx &ctx, int news);
  Term unrank(std::size_t n, const Ctx &ctx, int news, std::uint64_t index);
  std::vector<Term> unrank_seq(std::size_t parts, std::size_t n, const Ctx &ctx, int news, std::uint64_t index);

  std::vector<std::string> constants_;
  static std::uint64_t key(std::size_t parts, std::size_t n, const Ctx &ctx, int news);

  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

struct Corpus {
  std::vector<Configuration> configs;
  /// AST size of each member's term.
  std::vector<std::size_t> sizes;
  /// "enumerated(N)", "paper_examples" or "random(SEED, N)".
  std::string provenance;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of well-formed closed terms of exactly `size` nodes with at most
/// `max_new` `new` sites.
std::uint64_t count_closed_terms(std::size_t size, int max_new = 3);

/// Every well-formed closed term up to `size_bound` nodes over {0, 1, H, X,
/// CNOT} with at most `max_new` `new` sites.
Corpus enumerated_corpus(std::size_t size_bound, int max_new = 3);

/// For each size up to `size_bound`, `per_size` distinct terms drawn
/// uniformly among those with at least `min_redexes` redexes (all of them
/// when fewer exist). Conditioning is by rejection, so draws stay uniform on
/// the conditioned set.
Corpus random_corpus(std::uint64_t seed, std::size_t size_bound, std::size_t per_size, int max_new = 3,
                     std::size_t min_redexes = 0);

/// The Hadamard/measure example, bounded coin terms, the unbounded coin
/// term, and a few configurations with prepared registers.
Corpus paper_examples();

/// Hand-written configurations in which every pair of redex classes (K, N,
/// meas) occurs, with and without entangled registers.
Corpus clause_examples();

/// `(\!x. if x then 0 else 1) (meas (H (new 0)))`.
std::string hadamard_example();
/// Coin term with `rounds` nested measurement rounds; its normal form is 0
/// with probability 1 - 2^-rounds.
std::string bounded_coin(int rounds);
/// The fixpoint coin `Y !(\!f. \!x. if x then 0 else f (meas (H (new 0)))) (meas (H (new 0)))`.
std::string fixpoint_coin();

}  // namespace qstar
