#include "qstar/wellform.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qstar/parser.hpp"

namespace qstar {

bool Environment::well_formed() const {
  for (const auto &x : linear_classical) {
    if (banged.count(x)) return false;
  }
  return true;
}

const char *rule_name(WfRule rule) {
  switch (rule) {
    case WfRule::Const: return "const";
    case WfRule::QVar: return "qvar";
    case WfRule::CVar: return "cvar";
    case WfRule::Der: return "der";
    case WfRule::Prom: return "prom";
    case WfRule::App: return "app";
    case WfRule::Tens: return "tens";
    case WfRule::New: return "new";
    case WfRule::Lam1: return "lam1";
    case WfRule::Lam2: return "lam2";
    case WfRule::Lam3: return "lam3";
    case WfRule::Meas: return "meas";
    case WfRule::If: return "if";
  }
  return "?";
}

namespace {

struct Usage {
  NameSet linear;
  NameSet quantum;

  bool empty() const { return linear.empty() && quantum.empty(); }
};

struct Result {
  Usage used;
  Derivation derivation;
};

class Checker {
 public:
  Checker(const Environment &env, const GateRegistry &gates, bool build)
      : env_(env), gates_(gates), build_(build) {
    for (const auto &x : env.linear_classical) scope_[x] = false;
    for (const auto &x : env.banged) scope_[x] = true;
  }

  Result check_root(const Term &t) {
    Result r = infer(t);
    for (const auto &x : env_.linear_classical) {
      if (!r.used.linear.count(x)) {
        throw WfError(WfErrorKind::LinearUnused, "linear variable " + x + " is never used", t);
      }
    }
    for (const auto &q : env_.quantum) {
      if (!r.used.quantum.count(q)) {
        throw WfError(WfErrorKind::QuantumDropped, "quantum variable @" + q + " is dropped", t);
      }
    }
    return r;
  }

 private:
  Derivation node(WfRule rule, const Usage &used, const Term &t, std::vector<Derivation> premises = {}) {
    if (!build_) return {rule, {}, t, {}};
    Environment e;
    e.linear_classical = used.linear;
    e.quantum = used.quantum;
    for (const auto &[name, banged] : scope_) {
      if (banged) e.banged.insert(name);
    }
    return {rule, std::move(e), t, std::move(premises)};
  }

  void join_disjoint(Usage &into, const Usage &part, const Term &at) {
    for (const auto &x : part.linear) {
      if (!into.linear.insert(x).second) {
        throw WfError(WfErrorKind::LinearUsedTwice, "linear variable " + x + " used twice", at);
      }
    }
    for (const auto &q : part.quantum) {
      if (!into.quantum.insert(q).second) {
        throw WfError(WfErrorKind::QuantumDuplicated, "quantum variable @" + q + " duplicated", at);
      }
    }
  }

  static std::string describe_usage(const Usage &u) {
    std::string out;
    for (const auto &x : u.linear) out += (out.empty() ? "" : ", ") + x;
    for (const auto &q : u.quantum) out += (out.empty() ? "@" : ", @") + q;
    return out;
  }

  Result infer(const Term &t) {
    switch (t.kind()) {
      case TermKind::BoolConst:
        return {{}, node(WfRule::Const, {}, t)};
      case TermKind::Gate:
        if (!gates_.contains(t.name())) {
          throw WfError(WfErrorKind::UnknownGate, "unknown gate " + t.name(), t);
        }
        return {{}, node(WfRule::Const, {}, t)};
      case TermKind::QuantumVar: {
        if (!env_.quantum.count(t.name())) {
          throw WfError(WfErrorKind::QuantumNotInEnvironment,
                        "quantum variable @" + t.name() + " is not in the environment", t);
        }
        Usage u;
        u.quantum.insert(t.name());
        Derivation d = node(WfRule::QVar, u, t);
        return {std::move(u), std::move(d)};
      }
      case TermKind::ClassicalVar: {
        auto it = scope_.find(t.name());
        if (it == scope_.end()) throw WfError(WfErrorKind::UnboundVariable, "unbound variable " + t.name(), t);
        if (it->second) return {{}, node(WfRule::Der, {}, t)};
        Usage u;
        u.linear.insert(t.name());
        Derivation d = node(WfRule::CVar, u, t);
        return {std::move(u), std::move(d)};
      }
      case TermKind::Bang: {
        Result body = infer(t.child(0));
        if (!body.used.empty()) {
          throw WfError(WfErrorKind::NonBangedUnderBang,
                        "non-banged variable(s) " + describe_usage(body.used) + " under '!'", t);
        }
        Derivation d = node(WfRule::Prom, {}, t, premises(std::move(body.derivation)));
        return {{}, std::move(d)};
      }
      case TermKind::New:
      case TermKind::Meas: {
        Result arg = infer(t.child(0));
        const WfRule rule = t.is(TermKind::New) ? WfRule::New : WfRule::Meas;
        Derivation d = node(rule, arg.used, t, premises(std::move(arg.derivation)));
        return {std::move(arg.used), std::move(d)};
      }
      case TermKind::App:
      case TermKind::Tuple: {
        Usage total;
        std::vector<Derivation> ps;
        for (const auto &c : t.children()) {
          Result r = infer(c);
          join_disjoint(total, r.used, t);
          if (build_) ps.push_back(std::move(r.derivation));
        }
        const WfRule rule = t.is(TermKind::App) ? WfRule::App : WfRule::Tens;
        Derivation d = node(rule, total, t, std::move(ps));
        return {std::move(total), std::move(d)};
      }
      case TermKind::If: {
        Result cond = infer(t.child(0));
        std::vector<Derivation> ps;
        if (build_) ps.push_back(std::move(cond.derivation));
        for (std::size_t i = 1; i <= 2; ++i) {
          Result branch = infer(t.child(i));
          if (!branch.used.empty()) {
            throw WfError(WfErrorKind::LinearInIfBranch,
                          "linear resource(s) " + describe_usage(branch.used) + " inside an if branch", t.child(i));
          }
          if (build_) ps.push_back(std::move(branch.derivation));
        }
        Derivation d = node(WfRule::If, cond.used, t, std::move(ps));
        return {std::move(cond.used), std::move(d)};
      }
      case TermKind::Lambda: {
        const Pattern &p = t.pattern();
        const bool banged = p.kind == PatternKind::Bang;
        std::vector<std::pair<std::string, std::optional<bool>>> saved;
        for (const auto &n : p.names) {
          auto it = scope_.find(n);
          saved.emplace_back(n, it == scope_.end() ? std::nullopt : std::optional<bool>(it->second));
          scope_[n] = banged;
        }
        Result body;
        try {
          body = infer(t.child(0));
        } catch (...) {
          restore(saved);
          throw;
        }
        restore(saved);
        if (!banged) {
          for (const auto &n : p.names) {
            if (!body.used.linear.count(n)) {
              throw WfError(WfErrorKind::LinearUnused, "linear variable " + n + " is never used", t);
            }
            body.used.linear.erase(n);
          }
        }
        const WfRule rule = banged ? WfRule::Lam3 : p.kind == PatternKind::Tuple ? WfRule::Lam1 : WfRule::Lam2;
        Derivation d = node(rule, body.used, t, premises(std::move(body.derivation)));
        return {std::move(body.used), std::move(d)};
      }
    }
    throw WfError(WfErrorKind::MalformedEnvironment, "unknown term kind", t);
  }

  std::vector<Derivation> premises(Derivation d) {
    std::vector<Derivation> out;
    if (build_) out.push_back(std::move(d));
    return out;
  }

  void restore(const std::vector<std::pair<std::string, std::optional<bool>>> &saved) {
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
      if (it->second) scope_[it->first] = *it->second;
      else scope_.erase(it->first);
    }
  }

  const Environment &env_;
  const GateRegistry &gates_;
  bool build_;
  std::map<std::string, bool> scope_;  // name -> banged
};

Environment with_linear(Environment e, const std::vector<std::string> &names) {
  for (const auto &n : names) e.linear_classical.insert(n);
  return e;
}

bool mentions(const Environment &e, const std::string &x) {
  return e.linear_classical.count(x) || e.banged.count(x);
}

std::optional<std::string> check_node(const Derivation &d, const GateRegistry &gates) {
  const Term &t = d.term;
  const Environment &e = d.env;
  const auto &ps = d.premises;
  auto fail = [&](const std::string &why) -> std::optional<std::string> {
    return std::string(rule_name(d.rule)) + " at '" + print_term(t) + "': " + why;
  };
  if (!e.well_formed()) return fail("environment names a variable both linear and banged");
  auto linear_empty = e.linear_classical.empty() && e.quantum.empty();
  auto premise_terms_match = [&]() {
    if (ps.size() != t.children().size()) return false;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps[i].term != t.child(i)) return false;
    }
    return true;
  };

  switch (d.rule) {
    case WfRule::Const:
      if (!(t.is(TermKind::BoolConst) || (t.is(TermKind::Gate) && gates.contains(t.name())))) return fail("not a constant");
      if (!linear_empty || !ps.empty()) return fail("linear context must be empty");
      return std::nullopt;
    case WfRule::QVar:
      if (!t.is(TermKind::QuantumVar)) return fail("not a quantum variable");
      if (!e.linear_classical.empty() || e.quantum != NameSet{t.name()} || !ps.empty()) return fail("context must be exactly the variable");
      return std::nullopt;
    case WfRule::CVar:
      if (!t.is(TermKind::ClassicalVar)) return fail("not a variable");
      if (e.linear_classical != NameSet{t.name()} || !e.quantum.empty() || !ps.empty()) return fail("context must be exactly the variable");
      return std::nullopt;
    case WfRule::Der:
      if (!t.is(TermKind::ClassicalVar)) return fail("not a variable");
      if (!linear_empty || !e.banged.count(t.name()) || !ps.empty()) return fail("variable must be banged, linear context empty");
      return std::nullopt;
    case WfRule::Prom:
      if (!t.is(TermKind::Bang) || !premise_terms_match()) return fail("shape mismatch");
      if (!linear_empty || !(ps[0].env == e)) return fail("premise must share the banged-only context");
      return std::nullopt;
    case WfRule::New:
    case WfRule::Meas:
      if (!t.is(d.rule == WfRule::New ? TermKind::New : TermKind::Meas) || !premise_terms_match()) return fail("shape mismatch");
      if (!(ps[0].env == e)) return fail("premise context differs");
      return std::nullopt;
    case WfRule::App:
    case WfRule::Tens: {
      if (!t.is(d.rule == WfRule::App ? TermKind::App : TermKind::Tuple) || !premise_terms_match()) return fail("shape mismatch");
      NameSet lin, qv;
      for (const auto &p : ps) {
        if (p.env.banged != e.banged) return fail("premises must share the banged context");
        for (const auto &x : p.env.linear_classical) {
          if (!lin.insert(x).second) return fail("linear contexts overlap on " + x);
        }
        for (const auto &q : p.env.quantum) {
          if (!qv.insert(q).second) return fail("quantum contexts overlap on @" + q);
        }
      }
      if (lin != e.linear_classical || qv != e.quantum) return fail("premise contexts do not partition the conclusion");
      return std::nullopt;
    }
    case WfRule::Lam1:
    case WfRule::Lam2:
    case WfRule::Lam3: {
      if (!t.is(TermKind::Lambda) || !premise_terms_match()) return fail("shape mismatch");
      const Pattern &p = t.pattern();
      const PatternKind expected = d.rule == WfRule::Lam1 ? PatternKind::Tuple
                                   : d.rule == WfRule::Lam2 ? PatternKind::Var
                                                            : PatternKind::Bang;
      if (p.kind != expected) return fail("pattern does not match the rule");
      for (const auto &n : p.names) {
        if (mentions(e, n)) return fail("bound variable " + n + " already in the context");
      }
      Environment want = e;
      if (d.rule == WfRule::Lam3) want.banged.insert(p.names[0]);
      else want = with_linear(e, p.names);
      if (!(ps[0].env == want)) return fail("premise context is not the conclusion extended by the pattern");
      return std::nullopt;
    }
    case WfRule::If: {
      if (!t.is(TermKind::If) || !premise_terms_match()) return fail("shape mismatch");
      if (!(ps[0].env == e)) return fail("condition context differs");
      for (std::size_t i = 1; i <= 2; ++i) {
        if (!ps[i].env.linear_classical.empty() || !ps[i].env.quantum.empty() || ps[i].env.banged != e.banged) {
          return fail("branches must use only the banged context");
        }
      }
      return std::nullopt;
    }
  }
  return fail("unknown rule");
}

void format(const Derivation &d, int depth, std::ostringstream &out) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << rule_name(d.rule) << ": ";
  std::vector<std::string> parts;
  for (const auto &x : d.env.linear_classical) parts.push_back(x);
  for (const auto &q : d.env.quantum) parts.push_back("@" + q);
  for (const auto &x : d.env.banged) parts.push_back("!" + x);
  for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? ", " : "") << parts[i];
  out << (parts.empty() ? "|- " : " |- ") << print_term(d.term) << '\n';
  for (const auto &p : d.premises) format(p, depth + 1, out);
}

}  // namespace

Derivation check_wf(const Environment &env, const Term &t, const GateRegistry &gates) {
  if (!env.well_formed()) {
    throw WfError(WfErrorKind::MalformedEnvironment, "environment names a variable both linear and banged", t);
  }
  NameSet outer = env.linear_classical;
  outer.insert(env.banged.begin(), env.banged.end());
  Term renamed = rename_shadowing_binders(t, outer);
  Checker checker(env, gates, true);
  Result r = checker.check_root(renamed);
  // The root environment is the requested one, not just the consumed part.
  r.derivation.env.banged.insert(env.banged.begin(), env.banged.end());
  return std::move(r.derivation);
}

std::optional<std::string> validate_derivation(const Derivation &d, const GateRegistry &gates) {
  if (auto err = check_node(d, gates)) return err;
  for (const auto &p : d.premises) {
    if (auto err = validate_derivation(p, gates)) return err;
  }
  return std::nullopt;
}

bool is_wf_configuration_term(const Term &t, const GateRegistry &gates) {
  Environment env;
  env.quantum = free_quantum_vars(t);
  try {
    Checker checker(env, gates, false);
    checker.check_root(t);
    return true;
  } catch (const WfError &) {
    return false;
  }
}

std::string format_derivation(const Derivation &d) {
  std::ostringstream out;
  format(d, 0, out);
  return out.str();
}

}  // namespace qstar
