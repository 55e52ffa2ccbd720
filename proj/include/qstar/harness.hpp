#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "qstar/corpus.hpp"
#include "qstar/mixed.hpp"

namespace qstar {

/// Records every reduct handed to it and whether it is still well-formed.
class SubjectReductionLog {
 public:
  void record(const Configuration &from, const Configuration &to, const std::string &label);

  std::size_t checked() const { return checked_; }
  std::size_t violations() const { return violations_; }
  const std::vector<std::string> &witnesses() const { return witnesses_; }

 private:
  std::mutex mutex_;
  std::size_t checked_ = 0;
  std::size_t violations_ = 0;
  std::vector<std::string> witnesses_;
};

/// Checks every edge of a tree.
void record_tree(const ProbComputation &p, SubjectReductionLog &log);

struct DiamondFailure {
  std::string config;
  std::string alpha;
  std::string beta;
  int clause = 0;
  std::string detail;
};

struct DiamondReport {
  std::size_t pairs = 0;
  /// Pairs checked under each clause, indexed 1-6.
  std::array<std::size_t, 7> by_clause{};
  std::vector<DiamondFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Every pair of one-step reducts D, E of c coming from distinct redexes
/// (measurements expanded into both outcomes) is joined in one step on each
/// side as the matching clause of the quasi-one-step confluence property
/// demands.
DiamondReport check_quasi_diamond(const Configuration &c, const GateRegistry &gates = GateRegistry::builtin(),
                                  SubjectReductionLog *log = nullptr);

/// Distinct configurations reachable from c by any steps (c first,
/// breadth-first), at most `limit` of them. Zero-register configurations
/// are skipped.
std::vector<Configuration> reachable_configurations(const Configuration &c, std::size_t limit,
                                                    const GateRegistry &gates = GateRegistry::builtin());

struct ConfluenceReport {
  std::string config;
  std::vector<std::string> strategies;
  std::vector<std::vector<LeafOutcome>> distributions;
  std::vector<double> prob_any;
  std::vector<std::size_t> count_any;
  /// Largest total-variation distance between two strategies.
  double max_distance = 0;
  bool counts_agree = true;
  /// Some tree hit the depth bound; nothing was compared.
  bool inconclusive = false;
  std::vector<std::string> witnesses;

  bool ok(double tol = kDistributionTolerance) const { return inconclusive || (max_distance <= tol && counts_agree); }
};

/// Total-variation distance between two leaf distributions.
double total_variation(const std::vector<LeafOutcome> &a, const std::vector<LeafOutcome> &b);

ConfluenceReport check_strong_confluence(const Configuration &c, const std::vector<Strategy> &strategies,
                                         std::size_t depth, const GateRegistry &gates = GateRegistry::builtin(),
                                         SubjectReductionLog *log = nullptr);

/// leftmost, rightmost and random(seed), random(seed + 1), random(seed + 2).
std::vector<Strategy> standard_strategies(std::uint64_t seed);

struct KTerminationReport {
  std::size_t size = 0;
  /// Length of the longest K-only sequence.
  std::size_t longest = 0;
  std::size_t explored = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Explores every maximal sequence of l.cm/r.cm steps from c: each step
/// must strictly increase abstraction_size and keep the size, and every
/// sequence must be shorter than size².
KTerminationReport check_K_termination(const Configuration &c, const GateRegistry &gates = GateRegistry::builtin(),
                                       SubjectReductionLog *log = nullptr);

struct AgreementReport {
  std::string config;
  std::string strategy;
  std::size_t steps = 0;
  double max_difference = 0;
  bool monotone = true;
  bool inconclusive = false;
  std::vector<std::string> witnesses;
  bool ok(double tol = kDistributionTolerance) const { return inconclusive || (max_difference <= tol && monotone); }
};

/// Runs the mixed computation from {1: c} until only normal forms remain and
/// compares it with the leaf distribution of a maximal tree for c.
AgreementReport check_mixed_tree_agreement(const Configuration &c, const Strategy &strat, std::size_t depth,
                                           const GateRegistry &gates = GateRegistry::builtin(),
                                           SubjectReductionLog *log = nullptr);

struct AlgebraReport {
  std::size_t registers = 0;
  std::size_t checks = 0;
  double max_error = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Completeness (M0†M0 + M1†M1 = I for 1-4 qubits) and the measurement
/// identities on `count` random registers of 1-4 qubits.
AlgebraReport check_measurement_algebra(std::uint64_t seed, std::size_t count = 1000, int max_qubits = 4,
                                        double tol = kRegisterTolerance);

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::size_t inconclusive = 0;
  double seconds = 0;
  std::vector<std::string> witnesses;
  nlohmann::json details = nlohmann::json::object();
  bool ok() const { return failures == 0; }
};

struct VerifyOptions {
  /// diamond, confluence, ktermination, measurement-algebra, mixed or all.
  std::string suite = "all";
  /// Exhaustive enumeration bound.
  std::size_t size = 5;
  /// Sizes above `size` up to `sample_size` get `per_size` uniform samples
  /// among terms with at least `min_redexes` redexes.
  std::size_t sample_size = 12;
  std::size_t per_size = 200;
  std::size_t min_redexes = 2;
  std::size_t depth = 64;
  std::uint64_t seed = 1;
  int max_new = 3;
  std::size_t algebra_registers = 1000;
  /// The diamond suite checks up to this many configurations reachable from
  /// each corpus member, so that measurement redexes meet other redexes.
  std::size_t diamond_reach = 32;
};

/// Streams the corpus used by every corpus-driven suite: exhaustive up to
/// options.size, sampled beyond, plus the paper examples.
void for_each_verification_config(const VerifyOptions &options, const std::function<void(const Configuration &)> &fn);
std::string verification_provenance(const VerifyOptions &options);

/// Runs the selected suites; the last result is always subject reduction
/// over every reduct computed by the others.
std::vector<SuiteResult> run_verify(const VerifyOptions &options, const GateRegistry &gates = GateRegistry::builtin());

nlohmann::json to_json(const SuiteResult &r);

}  // namespace qstar
