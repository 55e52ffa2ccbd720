#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "qstar/quantum.hpp"
#include "qstar/term.hpp"

namespace qstar {

/// A configuration [Q, QV, M], stored in canonical form: quantum variables
/// are renamed r0, r1, ... by first left-to-right occurrence in the term
/// (unused ones follow in natural name order) and bound classical
/// variables are alpha-canonicalized. Equivalent preconfigurations
/// therefore have identical canonical forms up to register tolerance.
class Configuration {
 public:
  /// [1, {}, term].
  explicit Configuration(Term term);
  /// Canonicalizes the preconfiguration [reg, reg.qvars(), term]; throws
  /// QuantumError unless QV(term) ⊆ reg.qvars().
  Configuration(QuantumRegister reg, Term term);

  const QuantumRegister &register_() const { return reg_; }
  const std::vector<std::string> &qvars() const { return reg_.qvars(); }
  const Term &term() const { return term_; }
  /// Canonical term text; equal configurations have equal keys.
  const std::string &key() const { return key_; }

  /// The renaming applied to the preconfiguration's quantum variables.
  const std::map<std::string, std::string> &renaming() const { return renaming_; }

  bool equals(const Configuration &other, double tol = kRegisterTolerance) const;
  bool operator==(const Configuration &other) const { return equals(other); }

  /// Text form "[register, {qvars}, term]".
  std::string to_string() const;

 private:
  QuantumRegister reg_;
  Term term_;
  std::string key_;
  std::map<std::string, std::string> renaming_;
};

nlohmann::json to_json(const Configuration &c);
/// Parses {"qvars": [...], "amplitudes": [[re, im], ...], "term": "..."}.
Configuration configuration_from_json(const nlohmann::json &j);

}  // namespace qstar
