#include "qstar/gates.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qstar {

namespace {

GateRegistry make_builtin() {
  const double h = 1.0 / std::sqrt(2.0);
  const Amplitude i{0.0, 1.0};
  GateRegistry g;
  g.add({"I", 1, {1, 0, 0, 1}});
  g.add({"H", 1, {h, h, h, -h}});
  g.add({"X", 1, {0, 1, 1, 0}});
  g.add({"Y", 1, {0, -i, i, 0}});
  g.add({"Z", 1, {1, 0, 0, -1}});
  g.add({"S", 1, {1, 0, 0, i}});
  g.add({"T", 1, {1, 0, 0, std::polar(1.0, M_PI / 4)}});
  g.add({"CNOT", 2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}});
  g.add({"CZ", 2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1}});
  g.add({"SWAP", 2, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1}});
  return g;
}

bool valid_gate_name(const std::string &name) {
  if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

const GateRegistry &GateRegistry::builtin() {
  static const GateRegistry registry = make_builtin();
  return registry;
}

void GateRegistry::add(UnitaryGate gate) {
  if (!valid_gate_name(gate.name)) throw QuantumError("invalid gate name '" + gate.name + "'");
  if (gate.arity < 1) throw QuantumError("gate " + gate.name + ": arity must be positive");
  if (gate.matrix.size() != gate.dim() * gate.dim()) {
    throw QuantumError("gate " + gate.name + ": expected " + std::to_string(gate.dim() * gate.dim()) +
                       " matrix entries, got " + std::to_string(gate.matrix.size()));
  }
  if (!gate.is_unitary()) throw QuantumError("gate " + gate.name + " is not unitary");
  gates_[gate.name] = std::move(gate);
}

const UnitaryGate *GateRegistry::find(const std::string &name) const {
  auto it = gates_.find(name);
  return it == gates_.end() ? nullptr : &it->second;
}

const UnitaryGate &GateRegistry::at(const std::string &name) const {
  const UnitaryGate *g = find(name);
  if (!g) throw QuantumError("unknown gate '" + name + "'");
  return *g;
}

void GateRegistry::load(std::string_view text) {
  std::istringstream lines{std::string(text)};
  std::ostringstream stripped;
  std::string line;
  while (std::getline(lines, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    stripped << line << '\n';
  }
  std::istringstream in(stripped.str());
  std::string word;
  while (in >> word) {
    if (word != "gate") throw QuantumError("gate file: expected 'gate', found '" + word + "'");
    UnitaryGate g;
    if (!(in >> g.name >> g.arity)) throw QuantumError("gate file: expected name and arity after 'gate'");
    if (g.arity < 1 || g.arity > 6) throw QuantumError("gate " + g.name + ": arity out of range");
    const std::size_t n = g.dim() * g.dim();
    for (std::size_t k = 0; k < n; ++k) {
      std::string entry;
      if (!(in >> entry)) throw QuantumError("gate " + g.name + ": missing matrix entries");
      auto comma = entry.find(',');
      if (comma == std::string::npos) throw QuantumError("gate " + g.name + ": entry '" + entry + "' is not re,im");
      try {
        std::size_t used = 0;
        const std::string re_s = entry.substr(0, comma), im_s = entry.substr(comma + 1);
        const double re = std::stod(re_s, &used);
        if (used != re_s.size()) throw std::invalid_argument(entry);
        const double im = std::stod(im_s, &used);
        if (used != im_s.size()) throw std::invalid_argument(entry);
        g.matrix.emplace_back(re, im);
      } catch (const std::logic_error &) {
        throw QuantumError("gate " + g.name + ": malformed entry '" + entry + "'");
      }
    }
    add(std::move(g));
  }
}

void GateRegistry::load_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw QuantumError("cannot open gate file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  load(buf.str());
}

}  // namespace qstar
