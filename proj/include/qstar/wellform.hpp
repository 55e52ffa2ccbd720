#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstar/gates.hpp"
#include "qstar/term.hpp"

namespace qstar {

/// Γ = Λ, !Δ with Λ split into linear classical and quantum variables.
struct Environment {
  NameSet linear_classical;
  NameSet quantum;
  NameSet banged;

  /// A classical name may not be both linear and banged.
  bool well_formed() const;
  bool operator==(const Environment &) const = default;
};

enum class WfRule { Const, QVar, CVar, Der, Prom, App, Tens, New, Lam1, Lam2, Lam3, Meas, If };

const char *rule_name(WfRule rule);

struct Derivation {
  WfRule rule;
  Environment env;
  Term term;
  std::vector<Derivation> premises;
};

enum class WfErrorKind {
  LinearUsedTwice,
  LinearUnused,
  QuantumDuplicated,
  QuantumDropped,
  QuantumNotInEnvironment,
  NonBangedUnderBang,
  LinearInIfBranch,
  UnknownGate,
  UnboundVariable,
  MalformedEnvironment,
};

class WfError : public std::runtime_error {
 public:
  WfError(WfErrorKind kind, const std::string &message, Term subterm)
      : std::runtime_error(message), kind_(kind), subterm_(std::move(subterm)) {}

  WfErrorKind kind() const { return kind_; }
  /// The subterm at which the violation was detected.
  const Term &subterm() const { return subterm_; }

 private:
  WfErrorKind kind_;
  Term subterm_;
};

/// Builds a derivation of env ⊢ t or throws WfError.
///
/// Resources are inferred bottom-up: each subterm reports the linear and
/// quantum variables it consumes, which makes the context split of the app
/// and tens rules unique. Binders that shadow a visible name are renamed
/// first, so the derivation's terms may differ from `t` in bound names.
Derivation check_wf(const Environment &env, const Term &t,
                    const GateRegistry &gates = GateRegistry::builtin());

/// Replays a derivation node by node against the rule schemas; returns a
/// description of the first violated schema, if any.
std::optional<std::string> validate_derivation(const Derivation &d,
                                               const GateRegistry &gates = GateRegistry::builtin());

/// QV(t) ⊢ t is derivable.
bool is_wf_configuration_term(const Term &t, const GateRegistry &gates = GateRegistry::builtin());

/// Indented text form, one judgement per line.
std::string format_derivation(const Derivation &d);

}  // namespace qstar
