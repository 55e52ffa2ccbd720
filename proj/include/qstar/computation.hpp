#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qstar/reduction.hpp"

namespace qstar {

inline constexpr double kDistributionTolerance = 1e-9;

/// Picks one redex from the deterministic redex list of a configuration.
class Strategy {
 public:
  enum class Kind { Leftmost, Rightmost, Random, Scripted };

  static Strategy leftmost() { return Strategy(Kind::Leftmost); }
  static Strategy rightmost() { return Strategy(Kind::Rightmost); }
  /// The choice is a pure function of (seed, configuration), so the same
  /// configuration always gets the same redex regardless of visit order.
  static Strategy random(std::uint64_t seed);
  /// Replays recorded redex indices in call order; after the script runs
  /// out (or an index is out of range) it falls back to leftmost.
  static Strategy scripted(std::vector<std::size_t> choices);
  /// "leftmost", "rightmost", "random" (uses `seed`), "random:SEED".
  static Strategy parse(const std::string &spec, std::uint64_t seed = 0);

  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  std::string name() const;

  /// Index into `redexes`, which must be non-empty.
  std::size_t choose(const Configuration &c, const std::vector<Redex> &redexes);

 private:
  explicit Strategy(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::uint64_t seed_ = 0;
  std::vector<std::size_t> script_;
  std::size_t cursor_ = 0;
};

/// A finite probabilistic computation: Leaf [C], Unary [C, P] for a
/// non-measurement step, Binary [(p, q, C), P, R] for a measurement.
struct ProbComputation {
  enum class Kind { Leaf, Unary, Binary };

  Kind kind = Kind::Leaf;
  Configuration config;
  /// Unary/Binary: the label of the step taken at this node.
  std::optional<ReductionLabel> label;
  /// Binary: probabilities of outcome 0 (left) and 1 (right).
  double p = 0;
  double q = 0;
  /// Leaf only: no contraction applies.
  bool normal_form = false;
  std::vector<ProbComputation> children;

  static ProbComputation leaf(Configuration c, const GateRegistry &gates = GateRegistry::builtin());
  static ProbComputation unary(Configuration c, ReductionLabel label, ProbComputation child);
  static ProbComputation binary(Configuration c, ReductionLabel label, double p, double q, ProbComputation left,
                                ProbComputation right);

  /// Every leaf is a normal form.
  bool is_maximal() const;
  std::size_t depth() const;
  std::size_t node_count() const;
};

struct BuildOptions {
  std::size_t max_depth = 64;
  /// Worker threads for Binary children; 1 keeps construction sequential.
  /// Scripted strategies always build sequentially.
  unsigned jobs = 1;
};

/// Expands root under `strat`: non-measurement redexes give Unary nodes,
/// measurements give Binary nodes with both outcomes. Nodes at depth
/// `max_depth` that still have redexes become (non-normal) leaves.
ProbComputation build_computation(const Configuration &root, Strategy strat, std::size_t max_depth,
                                  const GateRegistry &gates = GateRegistry::builtin());
ProbComputation build_computation(const Configuration &root, Strategy strat, const BuildOptions &options,
                                  const GateRegistry &gates = GateRegistry::builtin());

/// 0 iff the register is the zero vector.
int delta(const Configuration &c);

class MeasureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// P(p)(c); throws MeasureError unless c is a normal form.
double prob_of(const ProbComputation &p, const Configuration &c, const GateRegistry &gates = GateRegistry::builtin());
/// N(p)(c); counts zero-register leaves too.
std::size_t count_of(const ProbComputation &p, const Configuration &c,
                     const GateRegistry &gates = GateRegistry::builtin());
double prob_any(const ProbComputation &p);
std::size_t count_any(const ProbComputation &p);

std::size_t weight(const ProbComputation &p);
std::size_t branch_degree(const ProbComputation &p);

/// r ⊑ p: r is a finite pruning of p.
bool is_subcomputation(const ProbComputation &r, const ProbComputation &p);

struct LeafOutcome {
  Configuration config;
  double probability = 0;
  std::size_t count = 0;
};

/// Aggregated P and N over the distinct normal-form leaves, in first
/// occurrence order (left to right).
std::vector<LeafOutcome> leaf_distribution(const ProbComputation &p);

/// Measures of depth-bounded trees at each depth of a strictly increasing
/// schedule; P is monotone in the depth.
struct DepthSeries {
  std::vector<std::size_t> depths;
  std::vector<double> prob;
  std::vector<double> prob_any;
  bool maximal_at_last = false;
  double last_increment = 0;
};

DepthSeries prob_series(const Configuration &root, const Strategy &strat, const Configuration &target,
                        const std::vector<std::size_t> &depths, const GateRegistry &gates = GateRegistry::builtin());

/// Indented text trace, one node per line: label, probability, configuration.
std::string format_trace(const ProbComputation &p);
nlohmann::json to_json(const ProbComputation &p);

}  // namespace qstar
