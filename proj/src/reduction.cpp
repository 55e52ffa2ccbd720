#include "qstar/reduction.hpp"

#include <set>

namespace qstar {

std::string ReductionLabel::to_string() const {
  switch (kind) {
    case LabelKind::Uq: return "Uq";
    case LabelKind::New: return "new";
    case LabelKind::LBeta: return "l.beta";
    case LabelKind::QBeta: return "q.beta";
    case LabelKind::CBeta: return "c.beta";
    case LabelKind::LCm: return "l.cm";
    case LabelKind::RCm: return "r.cm";
    case LabelKind::If1: return "if1";
    case LabelKind::If0: return "if0";
    case LabelKind::Meas: return "meas(" + qvar + ")";
  }
  return "?";
}

namespace {

bool is_qvar_tuple(const Term &t, std::size_t arity) {
  if (!t.is(TermKind::Tuple) || t.children().size() != arity) return false;
  std::set<std::string> seen;
  for (const auto &c : t.children()) {
    if (!c.is(TermKind::QuantumVar) || !seen.insert(c.name()).second) return false;
  }
  return true;
}

bool is_linear_redex_frame(const Term &t) {
  return t.is(TermKind::App) && t.child(0).is_lambda_with_linear_pattern();
}

// The primary (non-commutative) contraction matching at t, if any.
std::optional<ReductionLabel> primary_match(const Term &t, const GateRegistry &gates) {
  switch (t.kind()) {
    case TermKind::App: {
      const Term &f = t.child(0);
      const Term &a = t.child(1);
      if (f.is(TermKind::Lambda)) {
        const Pattern &p = f.pattern();
        if (p.kind == PatternKind::Var) return ReductionLabel{LabelKind::LBeta, {}};
        if (p.kind == PatternKind::Bang && a.is(TermKind::Bang)) return ReductionLabel{LabelKind::CBeta, {}};
        if (p.kind == PatternKind::Tuple && is_qvar_tuple(a, p.names.size())) return ReductionLabel{LabelKind::QBeta, {}};
        return std::nullopt;
      }
      if (f.is(TermKind::Gate)) {
        const UnitaryGate *g = gates.find(f.name());
        if (!g) return std::nullopt;
        if (g->arity == 1 && a.is(TermKind::QuantumVar)) return ReductionLabel{LabelKind::Uq, {}};
        if (g->arity >= 2 && is_qvar_tuple(a, static_cast<std::size_t>(g->arity))) return ReductionLabel{LabelKind::Uq, {}};
      }
      return std::nullopt;
    }
    case TermKind::If:
      if (t.child(0).is(TermKind::BoolConst)) {
        return ReductionLabel{t.child(0).bit() ? LabelKind::If1 : LabelKind::If0, {}};
      }
      return std::nullopt;
    case TermKind::Meas:
      if (t.child(0).is(TermKind::QuantumVar)) return ReductionLabel{LabelKind::Meas, t.child(0).name()};
      return std::nullopt;
    case TermKind::New:
      if (t.child(0).is(TermKind::BoolConst)) return ReductionLabel{LabelKind::New, {}};
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

void collect(const Term &t, std::vector<int> &path, const GateRegistry &gates, std::vector<Redex> &out) {
  if (auto m = primary_match(t, gates)) out.push_back({path, *m});
  if (t.is(TermKind::App)) {
    if (is_linear_redex_frame(t.child(1))) out.push_back({path, {LabelKind::LCm, {}}});
    if (is_linear_redex_frame(t.child(0))) out.push_back({path, {LabelKind::RCm, {}}});
  }
  std::size_t reachable = 0;
  switch (t.kind()) {
    case TermKind::App:
    case TermKind::Tuple:
      reachable = t.children().size();
      break;
    case TermKind::New:
    case TermKind::Meas:
    case TermKind::Lambda:
    case TermKind::If:
      reachable = 1;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < reachable; ++i) {
    path.push_back(static_cast<int>(i));
    collect(t.child(i), path, gates, out);
    path.pop_back();
  }
}

// Renames the pattern variables of a linear abstraction that clash with
// `avoid`.
Term freshen_binder(const Term &lambda, const NameSet &avoid_free) {
  Pattern p = lambda.pattern();
  bool clash = false;
  for (const auto &n : p.names) {
    if (avoid_free.count(n)) clash = true;
  }
  if (!clash) return lambda;
  NameSet avoid = avoid_free;
  NameSet body_fv = free_classical_vars(lambda.child(0));
  avoid.insert(body_fv.begin(), body_fv.end());
  avoid.insert(p.names.begin(), p.names.end());
  std::map<std::string, Term> rename;
  for (auto &n : p.names) {
    if (!avoid_free.count(n)) continue;
    std::string fresh = fresh_name(n, avoid);
    avoid.insert(fresh);
    rename.emplace(n, Term::classical_var(fresh));
    n = fresh;
  }
  return Term::lambda(std::move(p), substitute(lambda.child(0), rename));
}

std::vector<std::string> tuple_qvars(const Term &t) {
  if (t.is(TermKind::QuantumVar)) return {t.name()};
  std::vector<std::string> out;
  for (const auto &c : t.children()) out.push_back(c.name());
  return out;
}

std::string fresh_qvar(const QuantumRegister &reg) {
  for (std::size_t i = reg.qubit_count();; ++i) {
    std::string n = "r" + std::to_string(i);
    if (!reg.contains(n)) return n;
  }
}

struct LocalResult {
  double probability;
  QuantumRegister reg;
  Term term;
  std::optional<int> outcome;
};

}  // namespace

std::vector<Redex> enumerate_redexes(const Term &t, const GateRegistry &gates) {
  std::vector<Redex> out;
  std::vector<int> path;
  collect(t, path, gates, out);
  return out;
}

std::vector<Redex> enumerate_redexes(const Configuration &c, const GateRegistry &gates) {
  return enumerate_redexes(c.term(), gates);
}

const Term &subterm_at(const Term &t, const std::vector<int> &position) {
  const Term *cur = &t;
  for (int i : position) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->children().size()) {
      throw ReductionError("position does not address a subterm");
    }
    cur = &cur->child(static_cast<std::size_t>(i));
  }
  return *cur;
}

Term replace_at(const Term &t, const std::vector<int> &position, const Term &replacement) {
  if (position.empty()) return replacement;
  std::vector<Term> path{t};
  for (std::size_t k = 0; k + 1 < position.size(); ++k) path.push_back(path.back().child(static_cast<std::size_t>(position[k])));
  Term cur = replacement;
  for (std::size_t k = position.size(); k-- > 0;) {
    std::vector<Term> kids = path[k].children();
    kids.at(static_cast<std::size_t>(position[k])) = cur;
    cur = path[k].with_children(std::move(kids));
  }
  return cur;
}

std::vector<Step> contract(const Configuration &c, const Redex &redex, std::optional<int> outcome,
                           const GateRegistry &gates) {
  if (outcome && redex.label.kind != LabelKind::Meas) {
    throw ReductionError("an outcome can only be requested for a measurement");
  }
  if (outcome && *outcome != 0 && *outcome != 1) throw ReductionError("measurement outcome must be 0 or 1");
  const Term *site_ptr = nullptr;
  try {
    site_ptr = &subterm_at(c.term(), redex.position);
  } catch (const ReductionError &) {
    throw ReductionError("stale redex: position no longer exists");
  }
  const Term &site = *site_ptr;
  // A stale redex no longer matches its label at the position.
  const auto stale = [&]() { return ReductionError("stale redex: " + redex.label.to_string() + " does not match"); };
  {
    bool matches = false;
    if (redex.label.in_K()) {
      matches = site.is(TermKind::App) &&
                is_linear_redex_frame(site.child(redex.label.kind == LabelKind::LCm ? 1 : 0));
    } else if (auto m = primary_match(site, gates)) {
      matches = *m == redex.label;
    }
    if (!matches) throw stale();
  }

  const QuantumRegister &reg = c.register_();
  std::vector<LocalResult> local;
  switch (redex.label.kind) {
    case LabelKind::LBeta:
    case LabelKind::CBeta: {
      const Term &f = site.child(0);
      const Term &arg = redex.label.kind == LabelKind::CBeta ? site.child(1).child(0) : site.child(1);
      local.push_back({1.0, reg, substitute(f.child(0), f.pattern().names[0], arg), std::nullopt});
      break;
    }
    case LabelKind::QBeta: {
      const Term &f = site.child(0);
      std::map<std::string, Term> subst;
      for (std::size_t i = 0; i < f.pattern().names.size(); ++i) subst.emplace(f.pattern().names[i], site.child(1).child(i));
      local.push_back({1.0, reg, substitute(f.child(0), subst), std::nullopt});
      break;
    }
    case LabelKind::If1:
      local.push_back({1.0, reg, site.child(1), std::nullopt});
      break;
    case LabelKind::If0:
      local.push_back({1.0, reg, site.child(2), std::nullopt});
      break;
    case LabelKind::Uq: {
      const UnitaryGate &g = gates.at(site.child(0).name());
      local.push_back({1.0, apply_unitary(reg, g, tuple_qvars(site.child(1))), site.child(1), std::nullopt});
      break;
    }
    case LabelKind::New: {
      const std::string r = fresh_qvar(reg);
      local.push_back({1.0, tensor_fresh(reg, r, site.child(0).bit()), Term::quantum_var(r), std::nullopt});
      break;
    }
    case LabelKind::Meas: {
      const std::string &r = redex.label.qvar;
      for (int bit = 0; bit <= 1; ++bit) {
        if (outcome && *outcome != bit) continue;
        MeasureOutcome m = normalized_measure(reg, r, bit);
        local.push_back({m.probability, std::move(m.post), Term::bang(Term::bool_const(bit)), bit});
      }
      break;
    }
    case LabelKind::LCm: {
      // L((\p.M)N) -> (\p.LM)N
      const Term &frame_fun = site.child(0);
      const Term &inner = site.child(1);
      Term lam = freshen_binder(inner.child(0), free_classical_vars(frame_fun));
      Term moved = Term::lambda(lam.pattern(), Term::app(frame_fun, lam.child(0)));
      local.push_back({1.0, reg, Term::app(moved, inner.child(1)), std::nullopt});
      break;
    }
    case LabelKind::RCm: {
      // ((\p.M)N)L -> (\p.ML)N
      const Term &inner = site.child(0);
      const Term &frame_arg = site.child(1);
      Term lam = freshen_binder(inner.child(0), free_classical_vars(frame_arg));
      Term moved = Term::lambda(lam.pattern(), Term::app(lam.child(0), frame_arg));
      local.push_back({1.0, reg, Term::app(moved, inner.child(1)), std::nullopt});
      break;
    }
  }

  std::vector<Step> steps;
  steps.reserve(local.size());
  for (auto &lr : local) {
    Term whole = replace_at(c.term(), redex.position, lr.term);
    Configuration next(std::move(lr.reg), std::move(whole));
    std::map<std::string, std::string> renaming;
    for (const auto &q : c.qvars()) {
      auto it = next.renaming().find(q);
      if (it != next.renaming().end()) renaming.emplace(q, it->second);
    }
    steps.push_back({lr.probability, std::move(next), redex.label, lr.outcome, std::move(renaming)});
  }
  return steps;
}

std::vector<Step> one_step_reducts(const Configuration &c, const GateRegistry &gates) {
  std::vector<Step> out;
  for (const auto &r : enumerate_redexes(c, gates)) {
    for (auto &s : contract(c, r, std::nullopt, gates)) out.push_back(std::move(s));
  }
  return out;
}

bool is_normal_form(const Configuration &c, const GateRegistry &gates) { return enumerate_redexes(c, gates).empty(); }

}  // namespace qstar
