#include "qstar/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <unordered_map>

#include "qstar/wellform.hpp"

namespace qstar {

namespace {

constexpr std::size_t kMaxWitnesses = 20;

void add_witness(std::vector<std::string> &out, std::string w) {
  if (out.size() < kMaxWitnesses) out.push_back(std::move(w));
}

std::string step_name(const Step &s) {
  std::string n = s.label.to_string();
  if (s.outcome) n += "=" + std::to_string(*s.outcome);
  return n;
}

// 0 = K, 1 = N, 2 = meas.
int label_class(const ReductionLabel &l) { return l.in_K() ? 0 : l.in_N() ? 1 : 2; }

}  // namespace

void SubjectReductionLog::record(const Configuration &from, const Configuration &to, const std::string &label) {
  const bool wf = is_wf_configuration_term(to.term());
  std::lock_guard<std::mutex> lock(mutex_);
  ++checked_;
  if (!wf) {
    ++violations_;
    add_witness(witnesses_, from.to_string() + " --" + label + "--> " + to.to_string());
  }
}

void record_tree(const ProbComputation &p, SubjectReductionLog &log) {
  for (std::size_t i = 0; i < p.children.size(); ++i) {
    log.record(p.config, p.children[i].config, p.label->to_string());
    record_tree(p.children[i], log);
  }
}

DiamondReport check_quasi_diamond(const Configuration &c, const GateRegistry &gates, SubjectReductionLog *log) {
  DiamondReport report;
  const std::vector<Redex> redexes = enumerate_redexes(c, gates);
  std::vector<std::vector<Step>> steps;
  for (const auto &r : redexes) {
    steps.push_back(contract(c, r, std::nullopt, gates));
    if (log) {
      for (const auto &s : steps.back()) log->record(c, s.result, step_name(s));
    }
  }
  // One-step reducts of each D, computed once.
  std::unordered_map<std::string, std::vector<Step>> cache;
  std::vector<std::vector<const std::vector<Step> *>> next(steps.size());
  const auto reducts = [&](const Step &from) -> const std::vector<Step> & {
    const std::string key = from.result.key() + "|" + describe(from.result.register_());
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, one_step_reducts(from.result, gates)).first;
      if (log) {
        for (const auto &s : it->second) log->record(from.result, s.result, step_name(s));
      }
    }
    return it->second;
  };
  const auto steps_to = [&](const Step &from, const Configuration &target, int cls) {
    for (const auto &s : reducts(from)) {
      if (label_class(s.label) == cls && s.result.equals(target)) return true;
    }
    return false;
  };
  // Some F with D -> F in class cd and E -> F in class ce.
  const auto joinable = [&](const Step &d, int cd, const Step &e, int ce) {
    for (const auto &sd : reducts(d)) {
      if (label_class(sd.label) != cd) continue;
      for (const auto &se : reducts(e)) {
        if (label_class(se.label) == ce && sd.result.equals(se.result)) return true;
      }
    }
    return false;
  };

  for (std::size_t i = 0; i < redexes.size(); ++i) {
    for (std::size_t j = i + 1; j < redexes.size(); ++j) {
      std::size_t a = i, b = j;
      if (label_class(redexes[a].label) > label_class(redexes[b].label)) std::swap(a, b);
      const int ca = label_class(redexes[a].label);
      const int cb = label_class(redexes[b].label);
      for (const Step &d : steps[a]) {
        for (const Step &e : steps[b]) {
          ++report.pairs;
          int clause = 0;
          bool ok = false;
          if (ca == 0 && cb == 0) {
            clause = 1;
            ok = d.result.equals(e.result) || joinable(d, 0, e, 0);
          } else if (ca == 0 && cb == 1) {
            clause = 2;
            ok = steps_to(d, e.result, 1) || joinable(d, 1, e, 0);
          } else if (ca == 1 && cb == 1) {
            clause = 4;
            ok = d.result.equals(e.result) || joinable(d, 1, e, 1);
          } else if (cb == 2 && ca < 2) {
            // D measures the same qubit with E's probability; E redoes alpha.
            clause = ca == 0 ? 3 : 5;
            const std::string r = d.renaming.at(redexes[b].label.qvar);
            for (const auto &sd : reducts(d)) {
              if (sd.label.kind != LabelKind::Meas || sd.label.qvar != r) continue;
              if (std::abs(sd.probability - e.probability) > kRegisterTolerance) continue;
              if (steps_to(e, sd.result, ca)) {
                ok = true;
                break;
              }
            }
          } else {
            clause = 6;
            const std::string q_in_d = d.renaming.at(redexes[b].label.qvar);
            const std::string r_in_e = e.renaming.at(redexes[a].label.qvar);
            for (const auto &sd : reducts(d)) {
              if (ok) break;
              if (sd.label.kind != LabelKind::Meas || sd.label.qvar != q_in_d) continue;
              for (const auto &se : reducts(e)) {
                if (se.label.kind != LabelKind::Meas || se.label.qvar != r_in_e) continue;
                if (std::abs(d.probability * sd.probability - e.probability * se.probability) > kRegisterTolerance) {
                  continue;
                }
                if (sd.result.equals(se.result)) {
                  ok = true;
                  break;
                }
              }
            }
          }
          ++report.by_clause[static_cast<std::size_t>(clause)];
          if (!ok) {
            report.failures.push_back({c.to_string(), step_name(d), step_name(e), clause,
                                       "D = " + d.result.to_string() + ", E = " + e.result.to_string()});
          }
        }
      }
    }
  }
  return report;
}

std::vector<Configuration> reachable_configurations(const Configuration &c, std::size_t limit,
                                                    const GateRegistry &gates) {
  std::vector<Configuration> out;
  std::unordered_map<std::string, std::vector<std::size_t>> seen;
  const auto visit = [&](const Configuration &d) {
    auto &bucket = seen[d.key()];
    for (std::size_t i : bucket) {
      if (out[i].equals(d)) return;
    }
    bucket.push_back(out.size());
    out.push_back(d);
  };
  if (limit == 0) return out;
  visit(c);
  for (std::size_t next = 0; next < out.size() && out.size() < limit; ++next) {
    for (const auto &s : one_step_reducts(out[next], gates)) {
      if (s.result.register_().is_zero()) continue;
      visit(s.result);
      if (out.size() >= limit) break;
    }
  }
  return out;
}

double total_variation(const std::vector<LeafOutcome> &a, const std::vector<LeafOutcome> &b) {
  double sum = 0;
  std::vector<bool> matched(b.size(), false);
  for (const auto &x : a) {
    double other = 0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (!matched[k] && b[k].config.equals(x.config)) {
        matched[k] = true;
        other = b[k].probability;
        break;
      }
    }
    sum += std::abs(x.probability - other);
  }
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (!matched[k]) sum += b[k].probability;
  }
  return sum / 2;
}

namespace {

// Equal counts for every normal form of either distribution.
bool same_counts(const std::vector<LeafOutcome> &a, const std::vector<LeafOutcome> &b) {
  if (a.size() != b.size()) return false;
  for (const auto &x : a) {
    bool found = false;
    for (const auto &y : b) {
      if (y.config.equals(x.config)) {
        if (y.count != x.count) return false;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::vector<Strategy> standard_strategies(std::uint64_t seed) {
  return {Strategy::leftmost(), Strategy::rightmost(), Strategy::random(seed), Strategy::random(seed + 1),
          Strategy::random(seed + 2)};
}

ConfluenceReport check_strong_confluence(const Configuration &c, const std::vector<Strategy> &strategies,
                                         std::size_t depth, const GateRegistry &gates, SubjectReductionLog *log) {
  ConfluenceReport report;
  report.config = c.to_string();
  for (const auto &s : strategies) {
    ProbComputation tree = build_computation(c, s, depth, gates);
    if (log) record_tree(tree, *log);
    report.strategies.push_back(s.name());
    if (!tree.is_maximal()) report.inconclusive = true;
    report.distributions.push_back(leaf_distribution(tree));
    report.prob_any.push_back(prob_any(tree));
    report.count_any.push_back(count_any(tree));
  }
  if (report.inconclusive) return report;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    for (std::size_t j = i + 1; j < strategies.size(); ++j) {
      const double tv = total_variation(report.distributions[i], report.distributions[j]);
      const double any = std::abs(report.prob_any[i] - report.prob_any[j]);
      report.max_distance = std::max({report.max_distance, tv, any});
      if (tv > kDistributionTolerance || any > kDistributionTolerance) {
        add_witness(report.witnesses, report.strategies[i] + " vs " + report.strategies[j] +
                                          ": distance " + std::to_string(std::max(tv, any)));
      }
      if (report.count_any[i] != report.count_any[j] ||
          !same_counts(report.distributions[i], report.distributions[j])) {
        report.counts_agree = false;
        add_witness(report.witnesses, report.strategies[i] + " vs " + report.strategies[j] + ": counts differ");
      }
    }
  }
  return report;
}

KTerminationReport check_K_termination(const Configuration &c, const GateRegistry &gates, SubjectReductionLog *log) {
  KTerminationReport report;
  report.size = term_size(c.term());
  const std::size_t bound = report.size * report.size;
  // Longest K-sequence from each visited term; K steps never touch the
  // register, so the term key identifies the node.
  std::unordered_map<std::string, std::size_t> longest;
  std::function<std::size_t(const Configuration &, std::size_t)> visit = [&](const Configuration &x,
                                                                             std::size_t length) -> std::size_t {
    if (length >= bound) {
      add_witness(report.violations, "K-sequence of length " + std::to_string(length) + " reaches the bound " +
                                         std::to_string(bound) + " at " + x.to_string());
      return 0;
    }
    if (auto it = longest.find(x.key()); it != longest.end()) return it->second;
    ++report.explored;
    std::size_t best = 0;
    const std::size_t abs_size = abstraction_size(x.term());
    for (const auto &r : enumerate_redexes(x, gates)) {
      if (!r.label.in_K()) continue;
      const Step s = contract(x, r, std::nullopt, gates).front();
      if (log) log->record(x, s.result, step_name(s));
      if (term_size(s.result.term()) != report.size) {
        add_witness(report.violations, "size changes along " + step_name(s) + " from " + x.to_string());
      }
      if (abstraction_size(s.result.term()) <= abs_size) {
        add_witness(report.violations, "abstraction size does not increase along " + step_name(s) + " from " +
                                           x.to_string());
        continue;
      }
      best = std::max(best, 1 + visit(s.result, length + 1));
    }
    longest.emplace(x.key(), best);
    return best;
  };
  report.longest = visit(c, 0);
  return report;
}

AgreementReport check_mixed_tree_agreement(const Configuration &c, const Strategy &strat, std::size_t depth,
                                           const GateRegistry &gates, SubjectReductionLog *log) {
  AgreementReport report;
  report.config = c.to_string();
  report.strategy = strat.name();
  ProbComputation tree = build_computation(c, strat, depth, gates);
  if (!tree.is_maximal()) {
    report.inconclusive = true;
    return report;
  }
  const std::vector<LeafOutcome> expected = leaf_distribution(tree);
  Strategy s = strat;
  MixedState m = MixedState::point(c);
  while (!m.all_normal(gates)) {
    if (report.steps >= depth) {
      report.inconclusive = true;
      return report;
    }
    MixedState next = mixed_step(m, s, gates);
    if (log) {
      for (const auto &e : next.entries()) {
        // Each successor entry came from some entry of m; its well-formedness
        // is what matters.
        log->record(c, e.config, "mixed");
      }
    }
    for (const auto &e : m.entries()) {
      if (!is_normal_form(e.config, gates)) continue;
      const double after = observe(next, e.config, gates);
      if (after + kDistributionTolerance < e.probability) {
        report.monotone = false;
        add_witness(report.witnesses, "observation of " + e.config.to_string() + " decreases");
      }
    }
    m = std::move(next);
    ++report.steps;
  }
  std::vector<LeafOutcome> observed;
  for (const auto &e : m.entries()) observed.push_back({e.config, e.probability, 0});
  for (const auto &x : expected) {
    const double diff = std::abs(observe(m, x.config, gates) - x.probability);
    report.max_difference = std::max(report.max_difference, diff);
  }
  report.max_difference = std::max(report.max_difference, total_variation(expected, observed));
  if (report.max_difference > kDistributionTolerance) {
    add_witness(report.witnesses, "mixed and tree distributions differ by " + std::to_string(report.max_difference));
  }
  return report;
}

namespace {

QuantumRegister random_register(std::mt19937_64 &rng, int qubits) {
  std::normal_distribution<double> normal;
  std::vector<std::string> names;
  for (int i = 0; i < qubits; ++i) names.push_back("q" + std::to_string(i));
  std::vector<Amplitude> amps(std::size_t{1} << qubits);
  double norm = 0;
  for (auto &a : amps) {
    a = {normal(rng), normal(rng)};
    norm += std::norm(a);
  }
  for (auto &a : amps) a /= std::sqrt(norm);
  return QuantumRegister::from_amplitudes(std::move(names), std::move(amps));
}

double max_diff(const QuantumRegister &a, const QuantumRegister &b) {
  if (a.qvars() != b.qvars()) return INFINITY;
  double d = 0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i) d = std::max(d, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
  return d;
}

}  // namespace

AlgebraReport check_measurement_algebra(std::uint64_t seed, std::size_t count, int max_qubits, double tol) {
  AlgebraReport report;
  const auto expect = [&](double error, const std::string &what) {
    ++report.checks;
    report.max_error = std::max(report.max_error, error);
    if (!(error <= tol)) add_witness(report.failures, what + ": error " + std::to_string(error));
  };

  // M0†M0 + M1†M1 = I as matrices, columns obtained from basis vectors.
  for (int n = 1; n <= max_qubits; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
    for (const auto &r : names) {
      std::vector<std::vector<QuantumRegister>> cols(2);
      for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Amplitude> e(dim);
        e[j] = 1;
        QuantumRegister b = QuantumRegister::from_amplitudes(names, e);
        for (int c = 0; c < 2; ++c) cols[static_cast<std::size_t>(c)].push_back(raw_measure(b, r, c));
      }
      double err = 0;
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          Amplitude s = 0;
          for (int c = 0; c < 2; ++c) {
            const auto &ci = cols[static_cast<std::size_t>(c)][i].amplitudes();
            const auto &cj = cols[static_cast<std::size_t>(c)][j].amplitudes();
            for (std::size_t k = 0; k < ci.size(); ++k) s += std::conj(ci[k]) * cj[k];
          }
          err = std::max(err, std::abs(s - Amplitude(i == j ? 1.0 : 0.0)));
        }
      }
      expect(err, "completeness on " + std::to_string(n) + " qubits at " + r);
    }
  }

  std::mt19937_64 rng(seed);
  const GateRegistry &gates = GateRegistry::builtin();
  const std::vector<std::string> gate_names{"H", "X", "Y", "Z", "S", "T", "CNOT", "CZ", "SWAP"};
  for (std::size_t k = 0; k < count; ++k) {
    const int n = 1 + static_cast<int>(k % static_cast<std::size_t>(max_qubits));
    const QuantumRegister q = random_register(rng, n);
    ++report.registers;
    const auto &names = q.qvars();
    const std::string r = names[rng() % names.size()];
    const int c = static_cast<int>(rng() % 2);
    const int d = static_cast<int>(rng() % 2);

    // Completeness on the register: p0 + p1 = |q|^2.
    expect(std::abs(outcome_probability(q, r, 0) + outcome_probability(q, r, 1) - q.squared_norm()),
           "outcome probabilities sum");
    // m_{r,c}(Q) is a register: normalized or zero.
    const MeasureOutcome m = normalized_measure(q, r, c);
    expect(m.post.is_zero() ? 0.0 : std::abs(m.post.squared_norm() - 1.0), "normalized post-register");

    // m_{r,c}(Q ⊗ |s -> d>) = m_{r,c}(Q) ⊗ |s -> d>.
    const QuantumRegister ext = tensor_fresh(q, "s", d);
    expect(max_diff(normalized_measure(ext, r, c).post, tensor_fresh(m.post, "s", d)), "normalized tensor commutation");
    expect(max_diff(raw_measure(ext, r, c), tensor_fresh(raw_measure(q, r, c), "s", d)), "raw tensor commutation");
    expect(std::abs(outcome_probability(ext, r, c) - outcome_probability(q, r, c)), "probability under tensor");

    if (n >= 2) {
      std::string other = names[rng() % names.size()];
      while (other == r) other = names[rng() % names.size()];
      const int e = static_cast<int>(rng() % 2);
      const MeasureOutcome q_r = normalized_measure(q, r, c);
      const MeasureOutcome q_o = normalized_measure(q, other, e);
      const MeasureOutcome r_then_o = normalized_measure(q_r.post, other, e);
      const MeasureOutcome o_then_r = normalized_measure(q_o.post, r, c);
      expect(max_diff(r_then_o.post, o_then_r.post), "normalized measurement commutation");
      expect(max_diff(raw_measure(raw_measure(q, r, c), other, e), raw_measure(raw_measure(q, other, e), r, c)),
             "raw measurement commutation");
      expect(std::abs(q_r.probability * r_then_o.probability - q_o.probability * o_then_r.probability),
             "probability products");

      // A gate on qubits other than r commutes with measuring r.
      std::vector<std::string> rest;
      for (const auto &v : names) {
        if (v != r) rest.push_back(v);
      }
      std::vector<std::string> candidates;
      for (const auto &g : gate_names) {
        if (gates.at(g).arity <= static_cast<int>(rest.size())) candidates.push_back(g);
      }
      const UnitaryGate &g = gates.at(candidates[rng() % candidates.size()]);
      std::shuffle(rest.begin(), rest.end(), rng);
      rest.resize(static_cast<std::size_t>(g.arity));
      expect(max_diff(apply_unitary(normalized_measure(q, r, c).post, g, rest),
                      normalized_measure(apply_unitary(q, g, rest), r, c).post),
             "unitary/measurement commutation with " + g.name);
    }
  }
  return report;
}

void for_each_verification_config(const VerifyOptions &options, const std::function<void(const Configuration &)> &fn) {
  TermSpace space;
  for (std::size_t n = 1; n <= options.size; ++n) {
    for (int k = 0; k <= options.max_new; ++k) {
      const std::uint64_t total = space.count(n, k);
      for (std::uint64_t i = 0; i < total; ++i) fn(Configuration(space.unrank(n, k, i)));
    }
  }
  if (options.sample_size > options.size) {
    Corpus sampled =
        random_corpus(options.seed, options.sample_size, options.per_size, options.max_new, options.min_redexes);
    for (std::size_t i = 0; i < sampled.configs.size(); ++i) {
      if (sampled.sizes[i] > options.size) fn(sampled.configs[i]);
    }
  }
  for (const auto &c : paper_examples().configs) fn(c);
  for (const auto &c : clause_examples().configs) fn(c);
}

std::string verification_provenance(const VerifyOptions &options) {
  std::string p = "enumerated(" + std::to_string(options.size) + ")";
  if (options.sample_size > options.size) {
    p += " + random(" + std::to_string(options.seed) + ", " + std::to_string(options.sample_size) + ") sizes " +
         std::to_string(options.size + 1) + ".." + std::to_string(options.sample_size) + ", " +
         std::to_string(options.per_size) + " per size with >= " + std::to_string(options.min_redexes) + " redexes";
  }
  return p + " + paper_examples + clause_examples";
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Runs `body` and adds its wall time to `r`.
template <typename F>
void timed(SuiteResult &r, F &&body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  r.seconds += seconds_since(start);
}

}  // namespace

std::vector<SuiteResult> run_verify(const VerifyOptions &options, const GateRegistry &gates) {
  static const std::vector<std::string> known{"all", "diamond", "confluence", "ktermination", "measurement-algebra",
                                              "mixed"};
  if (std::find(known.begin(), known.end(), options.suite) == known.end()) {
    throw std::invalid_argument("unknown suite '" + options.suite + "'");
  }
  if (options.size > kMaxEnumerationSize || options.sample_size > kMaxEnumerationSize) {
    throw CorpusError("size bound exceeds the maximum of " + std::to_string(kMaxEnumerationSize));
  }
  const auto wants = [&](const std::string &suite) { return options.suite == "all" || options.suite == suite; };
  SubjectReductionLog log;
  SuiteResult diamond{"diamond"}, confluence{"confluence"}, kterm{"ktermination"}, mixed{"mixed"};
  std::size_t pairs = 0, longest = 0, reached = 0;
  std::array<std::size_t, 7> by_clause{};
  double max_distance = 0, max_difference = 0;
  const auto strategies = standard_strategies(options.seed);

  const auto per_config = [&](const Configuration &c) {
    if (wants("diamond")) {
      timed(diamond, [&] {
        ++diamond.checked;
        bool failed = false;
        for (const auto &r : reachable_configurations(c, std::max<std::size_t>(options.diamond_reach, 1), gates)) {
          DiamondReport d = check_quasi_diamond(r, gates, &log);
          ++reached;
          pairs += d.pairs;
          for (std::size_t k = 0; k < by_clause.size(); ++k) by_clause[k] += d.by_clause[k];
          failed = failed || !d.ok();
          for (const auto &f : d.failures) {
            add_witness(diamond.witnesses, "clause " + std::to_string(f.clause) + " " + f.alpha + "/" + f.beta +
                                               " at " + f.config + ": " + f.detail);
          }
        }
        if (failed) ++diamond.failures;
      });
    }
    if (wants("confluence")) {
      timed(confluence, [&] {
        ConfluenceReport cr = check_strong_confluence(c, strategies, options.depth, gates, &log);
        ++confluence.checked;
        if (cr.inconclusive) ++confluence.inconclusive;
        max_distance = std::max(max_distance, cr.max_distance);
        if (!cr.ok()) {
          ++confluence.failures;
          for (const auto &w : cr.witnesses) add_witness(confluence.witnesses, cr.config + ": " + w);
        }
      });
    }
    if (wants("ktermination")) {
      timed(kterm, [&] {
        KTerminationReport k = check_K_termination(c, gates, &log);
        ++kterm.checked;
        longest = std::max(longest, k.longest);
        if (!k.ok()) {
          ++kterm.failures;
          for (const auto &w : k.violations) add_witness(kterm.witnesses, w);
        }
      });
    }
    if (wants("mixed")) {
      timed(mixed, [&] {
        for (const auto &s : {Strategy::leftmost(), Strategy::rightmost()}) {
          AgreementReport a = check_mixed_tree_agreement(c, s, options.depth, gates, &log);
          ++mixed.checked;
          if (a.inconclusive) ++mixed.inconclusive;
          max_difference = std::max(max_difference, a.max_difference);
          if (!a.ok()) {
            ++mixed.failures;
            for (const auto &w : a.witnesses) add_witness(mixed.witnesses, a.config + " [" + a.strategy + "]: " + w);
          }
        }
      });
    }
  };
  if (options.suite != "measurement-algebra") for_each_verification_config(options, per_config);

  std::vector<SuiteResult> results;
  const std::string provenance = verification_provenance(options);
  if (wants("diamond")) {
    diamond.details = {{"pairs", pairs},
                       {"configurations", reached},
                       {"pairs_by_clause", std::vector<std::size_t>(by_clause.begin() + 1, by_clause.end())},
                       {"corpus", provenance}};
    results.push_back(std::move(diamond));
  }
  if (wants("confluence")) {
    confluence.details = {{"max_distance", max_distance}, {"corpus", provenance}};
    results.push_back(std::move(confluence));
  }
  if (wants("ktermination")) {
    kterm.details = {{"longest", longest}, {"corpus", provenance}};
    results.push_back(std::move(kterm));
  }
  if (wants("mixed")) {
    mixed.details = {{"max_difference", max_difference}, {"corpus", provenance}};
    results.push_back(std::move(mixed));
  }
  if (wants("measurement-algebra")) {
    SuiteResult r{"measurement-algebra"};
    timed(r, [&] {
      AlgebraReport a = check_measurement_algebra(options.seed, options.algebra_registers);
      r.checked = a.checks;
      r.failures = a.failures.size();
      r.witnesses = a.failures;
      r.details = {{"registers", a.registers}, {"max_error", a.max_error}};
    });
    results.push_back(std::move(r));
  }
  SuiteResult sr{"subject-reduction"};
  sr.checked = log.checked();
  sr.failures = log.violations();
  sr.witnesses = log.witnesses();
  results.push_back(std::move(sr));
  return results;
}

nlohmann::json to_json(const SuiteResult &r) {
  return {{"suite", r.name},        {"checked", r.checked},     {"failures", r.failures},
          {"inconclusive", r.inconclusive}, {"seconds", r.seconds}, {"witnesses", r.witnesses},
          {"details", r.details},    {"ok", r.ok()}};
}

}  // namespace qstar
