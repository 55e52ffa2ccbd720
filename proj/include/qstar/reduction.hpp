#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstar/configuration.hpp"
#include "qstar/gates.hpp"

namespace qstar {

enum class LabelKind { Uq, New, LBeta, QBeta, CBeta, LCm, RCm, If1, If0, Meas };

struct ReductionLabel {
  LabelKind kind;
  /// Measured variable, for Meas only.
  std::string qvar;

  bool in_K() const { return kind == LabelKind::LCm || kind == LabelKind::RCm; }
  bool in_N() const { return !in_K() && kind != LabelKind::Meas; }
  bool in_nM() const { return kind != LabelKind::Meas; }

  std::string to_string() const;
  bool operator==(const ReductionLabel &) const = default;
};

/// A contractible position. `position` lists child indices from the root:
/// App (0 = function, 1 = argument), Tuple (component), New/Meas/Lambda (0),
/// If (0 = condition only).
struct Redex {
  std::vector<int> position;
  ReductionLabel label;

  bool operator==(const Redex &) const = default;
};

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All redexes, in pre-order. At a single position the matching contraction
/// comes first (beta, Uq, if, meas or new, at most one of them), then l.cm,
/// then r.cm. Reduction never enters `!` or the branches of an `if`.
std::vector<Redex> enumerate_redexes(const Configuration &c,
                                     const GateRegistry &gates = GateRegistry::builtin());
std::vector<Redex> enumerate_redexes(const Term &t, const GateRegistry &gates = GateRegistry::builtin());

/// One outcome of a contraction.
struct Step {
  double probability;
  Configuration result;
  ReductionLabel label;
  /// For a measurement, the observed bit.
  std::optional<int> outcome;
  /// Maps the source configuration's quantum variables that survive the
  /// step to their names in `result`.
  std::map<std::string, std::string> renaming;
};

/// Applies the contraction at `redex`. A measurement returns both outcomes
/// (outcome 0 first) unless `outcome` selects one; zero-probability
/// outcomes are kept with their zero register. Throws ReductionError for a
/// stale redex or an outcome given to a non-measurement.
std::vector<Step> contract(const Configuration &c, const Redex &redex, std::optional<int> outcome = std::nullopt,
                           const GateRegistry &gates = GateRegistry::builtin());

/// Every one-step reduct of c (measurements expanded into both outcomes).
std::vector<Step> one_step_reducts(const Configuration &c, const GateRegistry &gates = GateRegistry::builtin());

bool is_normal_form(const Configuration &c, const GateRegistry &gates = GateRegistry::builtin());

/// Subterm at a redex position.
const Term &subterm_at(const Term &t, const std::vector<int> &position);
/// Replaces the subterm at `position`.
Term replace_at(const Term &t, const std::vector<int> &position, const Term &replacement);

}  // namespace qstar
