#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "qstar/computation.hpp"

namespace qstar {

inline constexpr double kNegligibleProbability = 1e-12;

class MixedStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finitely supported distribution over configurations. Inserting a
/// configuration equal to an existing entry adds to its probability.
class MixedState {
 public:
  struct Entry {
    Configuration config;
    double probability = 0;
  };

  MixedState() = default;
  /// {1: c}.
  static MixedState point(Configuration c);

  void add(const Configuration &c, double probability);

  const std::vector<Entry> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double total() const;
  /// Throws MixedStateError unless probabilities sum to 1 within `tol`.
  void validate(double tol = kDistributionTolerance) const;
  /// Entries with probability below `threshold`; kept, only reported.
  std::vector<Entry> negligible(double threshold = kNegligibleProbability) const;
  bool all_normal(const GateRegistry &gates = GateRegistry::builtin()) const;

  /// Entries sorted by descending probability, then canonical key.
  std::vector<Entry> sorted() const;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
};

/// One ⟼ step: normal forms persist, every other entry takes the redex the
/// strategy picks (both outcomes for a measurement), results merged.
MixedState mixed_step(const MixedState &m, Strategy &strat, const GateRegistry &gates = GateRegistry::builtin());

/// [m0, m1, ..., m_steps].
std::vector<MixedState> run_mixed(const MixedState &m0, Strategy strat, std::size_t steps,
                                  const GateRegistry &gates = GateRegistry::builtin());

/// m(c); c must be a normal form.
double observe(const MixedState &m, const Configuration &c, const GateRegistry &gates = GateRegistry::builtin());

struct ObserveSeries {
  std::vector<std::size_t> steps;
  std::vector<double> values;
  double last_increment = 0;
  /// The state at the last scheduled step contains only normal forms.
  bool stabilized = false;
};

ObserveSeries limit_observe(const MixedState &m0, Strategy strat, const Configuration &c,
                            const std::vector<std::size_t> &schedule,
                            const GateRegistry &gates = GateRegistry::builtin());

nlohmann::json to_json(const MixedState &m);

}  // namespace qstar
