#include "qstar/configuration.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qstar/parser.hpp"

namespace qstar {

Configuration::Configuration(Term term) : Configuration(QuantumRegister(), std::move(term)) {}

Configuration::Configuration(QuantumRegister reg, Term term) {
  std::vector<std::string> order = quantum_vars_in_order(term);
  std::set<std::string> used(order.begin(), order.end());
  for (const auto &q : order) {
    if (!reg.contains(q)) throw QuantumError("quantum variable @" + q + " of the term is not in the register");
  }
  std::vector<std::string> unused;
  for (const auto &q : reg.qvars()) {
    if (!used.count(q)) unused.push_back(q);
  }
  std::sort(unused.begin(), unused.end(), NaturalLess{});
  order.insert(order.end(), unused.begin(), unused.end());

  bool identity = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::string name = "r" + std::to_string(i);
    if (name != order[i]) identity = false;
    renaming_.emplace(order[i], std::move(name));
  }
  if (identity) {
    reg_ = std::move(reg);
    term_ = alpha_canonical(term);
  } else {
    reg_ = rename_qvars(reg, renaming_);
    term_ = alpha_canonical(rename_quantum_vars(term, renaming_));
  }
  key_ = print_term(term_) + " |" + std::to_string(reg_.qubit_count());
}

bool Configuration::equals(const Configuration &other, double tol) const {
  return key_ == other.key_ && term_ == other.term_ && reg_.approx_equal(other.reg_, tol);
}

std::string Configuration::to_string() const {
  std::ostringstream out;
  out << '[' << describe(reg_) << ", {";
  for (std::size_t i = 0; i < reg_.qvars().size(); ++i) out << (i ? "," : "") << reg_.qvars()[i];
  out << "}, " << print_term(term_) << ']';
  return out.str();
}

nlohmann::json to_json(const Configuration &c) {
  nlohmann::json amps = nlohmann::json::array();
  for (const auto &a : c.register_().amplitudes()) amps.push_back({a.real(), a.imag()});
  return {{"qvars", c.qvars()}, {"amplitudes", amps}, {"term", print_term(c.term())}};
}

Configuration configuration_from_json(const nlohmann::json &j) {
  std::vector<std::string> qvars = j.at("qvars").get<std::vector<std::string>>();
  std::vector<Amplitude> amps;
  for (const auto &a : j.at("amplitudes")) amps.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
  // Accept any listing order by permuting through a rename to the same names.
  std::vector<std::string> sorted = qvars;
  std::sort(sorted.begin(), sorted.end(), NaturalLess{});
  QuantumRegister reg;
  if (sorted == qvars) {
    reg = QuantumRegister::from_amplitudes(qvars, std::move(amps));
  } else {
    std::vector<std::string> placeholders;
    std::map<std::string, std::string> back;
    for (std::size_t i = 0; i < qvars.size(); ++i) {
      placeholders.push_back("t" + std::to_string(i));
      back[placeholders.back()] = qvars[i];
    }
    reg = rename_qvars(QuantumRegister::from_amplitudes(placeholders, std::move(amps)), back);
  }
  return Configuration(std::move(reg), parse_term(j.at("term").get<std::string>()));
}

}  // namespace qstar
