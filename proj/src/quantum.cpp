#include "qstar/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qstar/term.hpp"

namespace qstar {

bool UnitaryGate::is_unitary(double tol) const {
  const std::size_t n = dim();
  if (matrix.size() != n * n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Amplitude sum = 0;
      for (std::size_t k = 0; k < n; ++k) sum += std::conj(at(k, i)) * at(k, j);
      const Amplitude expected = i == j ? 1.0 : 0.0;
      if (std::abs(sum - expected) > tol) return false;
    }
  }
  return true;
}

QuantumRegister::QuantumRegister() : amps_{Amplitude{1.0}} {}

QuantumRegister::QuantumRegister(std::vector<std::string> qvars, std::vector<Amplitude> amps)
    : qvars_(std::move(qvars)), amps_(std::move(amps)) {}

QuantumRegister QuantumRegister::scalar(Amplitude value) { return QuantumRegister({}, {value}); }

QuantumRegister QuantumRegister::zero(std::vector<std::string> qvars) {
  std::sort(qvars.begin(), qvars.end(), NaturalLess{});
  if (std::adjacent_find(qvars.begin(), qvars.end()) != qvars.end()) throw QuantumError("duplicate quantum variable");
  std::vector<Amplitude> amps(std::size_t{1} << qvars.size(), Amplitude{0.0});
  return QuantumRegister(std::move(qvars), std::move(amps));
}

QuantumRegister QuantumRegister::basis(const std::map<std::string, int> &bits) {
  std::vector<std::string> names;
  for (const auto &[n, b] : bits) names.push_back(n);
  QuantumRegister q = zero(names);
  std::size_t index = 0;
  for (const auto &[n, b] : bits) {
    if (b != 0 && b != 1) throw QuantumError("basis bit must be 0 or 1");
    if (b) index |= std::size_t{1} << q.bit_of(n);
  }
  q.amps_[index] = 1.0;
  return q;
}

QuantumRegister QuantumRegister::from_amplitudes(std::vector<std::string> qvars, std::vector<Amplitude> amplitudes) {
  if (amplitudes.size() != (std::size_t{1} << qvars.size())) {
    throw QuantumError("amplitude count must be 2^(number of quantum variables)");
  }
  std::vector<std::string> sorted = qvars;
  std::sort(sorted.begin(), sorted.end(), NaturalLess{});
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw QuantumError("duplicate quantum variable");
  if (sorted != qvars) throw QuantumError("quantum variables must be listed in canonical order");
  return QuantumRegister(std::move(qvars), std::move(amplitudes));
}

bool QuantumRegister::contains(const std::string &name) const {
  return std::find(qvars_.begin(), qvars_.end(), name) != qvars_.end();
}

int QuantumRegister::bit_of(const std::string &name) const {
  auto it = std::find(qvars_.begin(), qvars_.end(), name);
  if (it == qvars_.end()) throw QuantumError("quantum variable '" + name + "' not in register");
  return static_cast<int>(qvars_.size() - 1 - static_cast<std::size_t>(it - qvars_.begin()));
}

double QuantumRegister::squared_norm() const {
  double s = 0;
  for (const auto &a : amps_) s += std::norm(a);
  return s;
}

bool QuantumRegister::is_zero(double tol) const {
  return std::all_of(amps_.begin(), amps_.end(), [&](const Amplitude &a) { return std::abs(a) <= tol; });
}

bool QuantumRegister::approx_equal(const QuantumRegister &other, double tol) const {
  if (qvars_ != other.qvars_) return false;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (std::abs(amps_[i] - other.amps_[i]) > tol) return false;
  }
  return true;
}

QuantumRegister tensor(const QuantumRegister &a, const QuantumRegister &b) {
  std::vector<std::string> names = a.qvars();
  names.insert(names.end(), b.qvars().begin(), b.qvars().end());
  QuantumRegister out = QuantumRegister::zero(names);
  std::vector<Amplitude> amps(out.amplitudes().size());
  // Map each bit of a and b to its position in the merged register.
  std::vector<int> a_pos, b_pos;
  for (const auto &n : a.qvars()) a_pos.push_back(out.bit_of(n));
  for (const auto &n : b.qvars()) b_pos.push_back(out.bit_of(n));
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
    std::size_t base = 0;
    for (std::size_t k = 0; k < a_pos.size(); ++k) {
      if (i >> (a_pos.size() - 1 - k) & 1) base |= std::size_t{1} << a_pos[k];
    }
    for (std::size_t j = 0; j < b.amplitudes().size(); ++j) {
      std::size_t index = base;
      for (std::size_t k = 0; k < b_pos.size(); ++k) {
        if (j >> (b_pos.size() - 1 - k) & 1) index |= std::size_t{1} << b_pos[k];
      }
      amps[index] = a.amplitudes()[i] * b.amplitudes()[j];
    }
  }
  return QuantumRegister::from_amplitudes(out.qvars(), std::move(amps));
}

QuantumRegister tensor_fresh(const QuantumRegister &q, const std::string &r, int c) {
  if (q.contains(r)) throw QuantumError("quantum variable '" + r + "' already in register");
  if (c != 0 && c != 1) throw QuantumError("qubit value must be 0 or 1");
  return tensor(q, QuantumRegister::basis({{r, c}}));
}

QuantumRegister apply_unitary(const QuantumRegister &q, const UnitaryGate &gate,
                              const std::vector<std::string> &targets) {
  if (static_cast<int>(targets.size()) != gate.arity) {
    throw QuantumError("gate " + gate.name + " has arity " + std::to_string(gate.arity) + " but got " +
                       std::to_string(targets.size()) + " targets");
  }
  std::vector<int> bits;
  for (const auto &t : targets) {
    if (!q.contains(t)) throw QuantumError("target '" + t + "' not in register");
    const int b = q.bit_of(t);
    if (std::find(bits.begin(), bits.end(), b) != bits.end()) throw QuantumError("duplicate target '" + t + "'");
    bits.push_back(b);
  }
  std::size_t mask = 0;
  for (int b : bits) mask |= std::size_t{1} << b;

  const auto &in = q.amplitudes();
  std::vector<Amplitude> out(in.size(), Amplitude{0.0});
  const std::size_t dim = gate.dim();
  std::vector<std::size_t> spread(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
      if (s >> (bits.size() - 1 - k) & 1) idx |= std::size_t{1} << bits[k];
    }
    spread[s] = idx;
  }
  for (std::size_t rest = 0; rest < in.size(); ++rest) {
    if (rest & mask) continue;
    for (std::size_t row = 0; row < dim; ++row) {
      Amplitude acc = 0;
      for (std::size_t col = 0; col < dim; ++col) acc += gate.at(row, col) * in[rest | spread[col]];
      out[rest | spread[row]] = acc;
    }
  }
  return QuantumRegister::from_amplitudes(q.qvars(), std::move(out));
}

QuantumRegister raw_measure(const QuantumRegister &q, const std::string &r, int c) {
  if (c != 0 && c != 1) throw QuantumError("measurement outcome must be 0 or 1");
  const int bit = q.bit_of(r);
  std::vector<std::string> rest;
  for (const auto &n : q.qvars()) {
    if (n != r) rest.push_back(n);
  }
  std::vector<Amplitude> out(std::size_t{1} << rest.size());
  const std::size_t low_mask = (std::size_t{1} << bit) - 1;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::size_t index = ((j & ~low_mask) << 1) | (static_cast<std::size_t>(c) << bit) | (j & low_mask);
    out[j] = q.amplitudes()[index];
  }
  return QuantumRegister::from_amplitudes(std::move(rest), std::move(out));
}

double outcome_probability(const QuantumRegister &q, const std::string &r, int c) {
  return raw_measure(q, r, c).squared_norm();
}

MeasureOutcome normalized_measure(const QuantumRegister &q, const std::string &r, int c) {
  QuantumRegister raw = raw_measure(q, r, c);
  const double p = raw.squared_norm();
  if (p <= kRegisterTolerance * kRegisterTolerance) return {p, raw};
  const double scale = 1.0 / std::sqrt(p);
  std::vector<Amplitude> amps = raw.amplitudes();
  for (auto &a : amps) a *= scale;
  return {p, QuantumRegister::from_amplitudes(raw.qvars(), std::move(amps))};
}

QuantumRegister rename_qvars(const QuantumRegister &q, const std::map<std::string, std::string> &bijection) {
  std::vector<std::string> new_names;
  std::set<std::string> image;
  for (const auto &n : q.qvars()) {
    auto it = bijection.find(n);
    if (it == bijection.end()) throw QuantumError("renaming is not total: '" + n + "' unmapped");
    if (!image.insert(it->second).second) throw QuantumError("renaming is not injective on '" + it->second + "'");
    new_names.push_back(it->second);
  }
  QuantumRegister shape = QuantumRegister::zero(new_names);
  std::vector<int> target_bit;
  for (const auto &n : new_names) target_bit.push_back(shape.bit_of(n));
  const std::size_t n = q.qubit_count();
  std::vector<Amplitude> out(q.amplitudes().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (i >> (n - 1 - k) & 1) j |= std::size_t{1} << target_bit[k];
    }
    out[j] = q.amplitudes()[i];
  }
  return QuantumRegister::from_amplitudes(shape.qvars(), std::move(out));
}

std::string describe(const QuantumRegister &q) {
  std::ostringstream out;
  out.precision(6);
  if (q.qubit_count() == 0) {
    const Amplitude a = q.amplitudes()[0];
    if (a.imag() == 0) out << a.real();
    else out << '(' << a.real() << ',' << a.imag() << ')';
    return out.str();
  }
  bool first = true;
  for (std::size_t i = 0; i < q.amplitudes().size(); ++i) {
    const Amplitude a = q.amplitudes()[i];
    if (std::abs(a) <= kRegisterTolerance) continue;
    if (!first) out << " + ";
    first = false;
    if (a.imag() == 0) out << a.real();
    else out << '(' << a.real() << ',' << a.imag() << ')';
    out << '|';
    for (std::size_t k = 0; k < q.qubit_count(); ++k) {
      if (k) out << ',';
      out << q.qvars()[k] << "=" << ((i >> (q.qubit_count() - 1 - k)) & 1);
    }
    out << '>';
  }
  if (first) out << '0';
  return out.str();
}

}  // namespace qstar
