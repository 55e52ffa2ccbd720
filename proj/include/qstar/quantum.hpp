#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qstar {

using Amplitude = std::complex<double>;

inline constexpr double kRegisterTolerance = 1e-10;

class QuantumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct UnitaryGate {
  std::string name;
  int arity = 1;
  /// Row-major 2^arity x 2^arity matrix. Row/column index bits follow the
  /// target order: the first target is the most significant bit.
  std::vector<Amplitude> matrix;

  std::size_t dim() const { return std::size_t{1} << arity; }
  Amplitude at(std::size_t row, std::size_t col) const { return matrix[row * dim() + col]; }
  bool is_unitary(double tol = kRegisterTolerance) const;
};

/// Finite-dimensional state vector over a set of named qubits.
///
/// Variables are kept sorted in natural order (r2 before r10); the first
/// variable is the most significant bit of the basis index. The empty
/// register is a scalar.
class QuantumRegister {
 public:
  /// The canonical empty register, the scalar 1.
  QuantumRegister();

  static QuantumRegister scalar(Amplitude value);
  static QuantumRegister zero(std::vector<std::string> qvars);
  /// Computational basis state; `bits` maps every variable to 0 or 1.
  static QuantumRegister basis(const std::map<std::string, int> &bits);
  /// Amplitudes indexed in the canonical order of the sorted `qvars`.
  static QuantumRegister from_amplitudes(std::vector<std::string> qvars, std::vector<Amplitude> amplitudes);

  const std::vector<std::string> &qvars() const { return qvars_; }
  const std::vector<Amplitude> &amplitudes() const { return amps_; }
  std::size_t qubit_count() const { return qvars_.size(); }
  bool contains(const std::string &name) const;

  /// Bit position (0 = least significant) of a variable in the basis index.
  int bit_of(const std::string &name) const;

  double squared_norm() const;
  bool is_zero(double tol = kRegisterTolerance) const;
  /// Same variables and componentwise equal amplitudes within `tol`.
  bool approx_equal(const QuantumRegister &other, double tol = kRegisterTolerance) const;

 private:
  QuantumRegister(std::vector<std::string> qvars, std::vector<Amplitude> amps);

  std::vector<std::string> qvars_;
  std::vector<Amplitude> amps_;
};

/// q ⊗ |r -> c>.
QuantumRegister tensor_fresh(const QuantumRegister &q, const std::string &r, int c);

/// (U_targets ⊗ I_rest) q.
QuantumRegister apply_unitary(const QuantumRegister &q, const UnitaryGate &gate,
                              const std::vector<std::string> &targets);

/// Destructive measurement M_{r,c}: keep the amplitudes with r = c and drop
/// the coordinate r. Unnormalized and linear.
QuantumRegister raw_measure(const QuantumRegister &q, const std::string &r, int c);

/// Squared norm of raw_measure(q, r, c).
double outcome_probability(const QuantumRegister &q, const std::string &r, int c);

struct MeasureOutcome {
  double probability;
  QuantumRegister post;
};

/// Normalized measurement m_{r,c}. A zero-probability outcome returns the
/// raw (zero) register unscaled.
MeasureOutcome normalized_measure(const QuantumRegister &q, const std::string &r, int c);

/// Relabels variables through an injective map total on q's variables and
/// permutes amplitudes into the new canonical order.
QuantumRegister rename_qvars(const QuantumRegister &q, const std::map<std::string, std::string> &bijection);

/// Tensor product of registers over disjoint variable sets.
QuantumRegister tensor(const QuantumRegister &a, const QuantumRegister &b);

std::string describe(const QuantumRegister &q);

}  // namespace qstar
