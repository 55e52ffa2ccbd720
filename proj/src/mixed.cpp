#include "qstar/mixed.hpp"

#include <algorithm>
#include <cmath>

namespace qstar {

MixedState MixedState::point(Configuration c) {
  MixedState m;
  m.add(c, 1.0);
  return m;
}

void MixedState::add(const Configuration &c, double probability) {
  if (probability < 0 || !std::isfinite(probability)) throw MixedStateError("invalid probability");
  auto &bucket = index_[c.key()];
  for (std::size_t i : bucket) {
    if (entries_[i].config.equals(c)) {
      entries_[i].probability += probability;
      return;
    }
  }
  bucket.push_back(entries_.size());
  entries_.push_back({c, probability});
}

double MixedState::total() const {
  double s = 0;
  for (const auto &e : entries_) s += e.probability;
  return s;
}

void MixedState::validate(double tol) const {
  const double s = total();
  if (std::abs(s - 1.0) > tol) throw MixedStateError("mixed state probabilities sum to " + std::to_string(s));
}

std::vector<MixedState::Entry> MixedState::negligible(double threshold) const {
  std::vector<Entry> out;
  for (const auto &e : entries_) {
    if (e.probability < threshold) out.push_back(e);
  }
  return out;
}

bool MixedState::all_normal(const GateRegistry &gates) const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [&](const Entry &e) { return is_normal_form(e.config, gates); });
}

std::vector<MixedState::Entry> MixedState::sorted() const {
  std::vector<Entry> out = entries_;
  std::stable_sort(out.begin(), out.end(), [](const Entry &a, const Entry &b) {
    if (a.probability != b.probability) return a.probability > b.probability;
    return a.config.key() < b.config.key();
  });
  return out;
}

MixedState mixed_step(const MixedState &m, Strategy &strat, const GateRegistry &gates) {
  m.validate();
  MixedState next;
  for (const auto &e : m.entries()) {
    std::vector<Redex> redexes = enumerate_redexes(e.config, gates);
    if (redexes.empty()) {
      next.add(e.config, e.probability);
      continue;
    }
    const Redex &r = redexes[strat.choose(e.config, redexes)];
    for (const auto &s : contract(e.config, r, std::nullopt, gates)) {
      const double w = e.probability * s.probability;
      // A zero-probability branch carries no mass; it has nothing to add.
      if (w == 0.0) continue;
      next.add(s.result, w);
    }
  }
  return next;
}

std::vector<MixedState> run_mixed(const MixedState &m0, Strategy strat, std::size_t steps, const GateRegistry &gates) {
  std::vector<MixedState> out{m0};
  out.reserve(steps + 1);
  for (std::size_t i = 0; i < steps; ++i) out.push_back(mixed_step(out.back(), strat, gates));
  return out;
}

double observe(const MixedState &m, const Configuration &c, const GateRegistry &gates) {
  if (!is_normal_form(c, gates)) throw MeasureError("configuration " + c.to_string() + " is not a normal form");
  for (const auto &e : m.entries()) {
    if (e.config.equals(c)) return e.probability;
  }
  return 0;
}

ObserveSeries limit_observe(const MixedState &m0, Strategy strat, const Configuration &c,
                            const std::vector<std::size_t> &schedule, const GateRegistry &gates) {
  if (!is_normal_form(c, gates)) throw MeasureError("configuration " + c.to_string() + " is not a normal form");
  ObserveSeries out;
  MixedState cur = m0;
  std::size_t at = 0;
  bool normal = cur.all_normal(gates);
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (i > 0 && schedule[i] <= schedule[i - 1]) throw std::invalid_argument("step schedule must be strictly increasing");
    // Once everything is normal the state is a fixpoint.
    while (at < schedule[i] && !normal) {
      cur = mixed_step(cur, strat, gates);
      normal = cur.all_normal(gates);
      ++at;
    }
    out.steps.push_back(schedule[i]);
    out.values.push_back(observe(cur, c, gates));
  }
  out.stabilized = normal;
  if (out.values.size() >= 2) out.last_increment = out.values.back() - out.values[out.values.size() - 2];
  return out;
}

nlohmann::json to_json(const MixedState &m) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &e : m.sorted()) {
    nlohmann::json j = to_json(e.config);
    j["probability"] = e.probability;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace qstar
