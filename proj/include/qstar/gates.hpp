#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "qstar/quantum.hpp"

namespace qstar {

/// Named unitary gates available to terms.
class GateRegistry {
 public:
  /// I, H, X, Y, Z, S, T (one qubit) and CNOT, CZ, SWAP (two qubits).
  static const GateRegistry &builtin();

  /// Adds or replaces a gate; throws QuantumError unless the matrix is
  /// unitary within tolerance.
  void add(UnitaryGate gate);

  const UnitaryGate *find(const std::string &name) const;
  const UnitaryGate &at(const std::string &name) const;
  bool contains(const std::string &name) const { return find(name) != nullptr; }
  std::size_t size() const { return gates_.size(); }

  /// Reads gate stanzas:
  ///
  ///   # comment
  ///   gate SQRTX 1
  ///   0.5,0.5 0.5,-0.5
  ///   0.5,-0.5 0.5,0.5
  ///
  /// Each stanza is the keyword `gate`, a capitalized name, the arity and
  /// 4^arity row-major entries written `re,im`.
  void load(std::string_view text);
  void load_file(const std::string &path);

 private:
  std::map<std::string, UnitaryGate> gates_;
};

}  // namespace qstar
