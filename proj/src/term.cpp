#include "qstar/term.hpp"

#include <cctype>
#include <functional>
#include <stdexcept>

namespace qstar {

Pattern Pattern::var(std::string name) { return {PatternKind::Var, {std::move(name)}}; }

Pattern Pattern::bang(std::string name) { return {PatternKind::Bang, {std::move(name)}}; }

Pattern Pattern::tuple(std::vector<std::string> names) {
  if (names.size() < 2) throw std::invalid_argument("tuple pattern needs at least two names");
  NameSet seen;
  for (const auto &n : names) {
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable '" + n + "' in tuple pattern");
  }
  return {PatternKind::Tuple, std::move(names)};
}

Term Term::make(Node node) { return Term(std::make_shared<const Node>(std::move(node))); }

Term::Term() : Term(bool_const(0)) {}

Term Term::classical_var(std::string name) { return make({TermKind::ClassicalVar, std::move(name)}); }

Term Term::quantum_var(std::string name) { return make({TermKind::QuantumVar, std::move(name)}); }

Term Term::bang(Term body) { return make({TermKind::Bang, {}, 0, {}, {std::move(body)}}); }

Term Term::bool_const(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("boolean constant must be 0 or 1");
  return make({TermKind::BoolConst, {}, bit});
}

Term Term::gate(std::string name) { return make({TermKind::Gate, std::move(name)}); }

Term Term::new_(Term arg) { return make({TermKind::New, {}, 0, {}, {std::move(arg)}}); }

Term Term::app(Term fun, Term arg) {
  return make({TermKind::App, {}, 0, {}, {std::move(fun), std::move(arg)}});
}

Term Term::meas(Term arg) { return make({TermKind::Meas, {}, 0, {}, {std::move(arg)}}); }

Term Term::if_(Term cond, Term then_branch, Term else_branch) {
  return make({TermKind::If, {}, 0, {}, {std::move(cond), std::move(then_branch), std::move(else_branch)}});
}

Term Term::tuple(std::vector<Term> items) {
  if (items.size() < 2) throw std::invalid_argument("tuple needs at least two components");
  return make({TermKind::Tuple, {}, 0, {}, std::move(items)});
}

Term Term::lambda(Pattern pattern, Term body) {
  return make({TermKind::Lambda, {}, 0, std::move(pattern), {std::move(body)}});
}

Term Term::with_span(Span span) const {
  Node n = *node_;
  n.span = span;
  return make(std::move(n));
}

Term Term::with_children(std::vector<Term> children) const {
  Node n = *node_;
  n.children = std::move(children);
  return make(std::move(n));
}

bool Term::operator==(const Term &other) const {
  if (node_ == other.node_) return true;
  const Node &a = *node_;
  const Node &b = *other.node_;
  if (a.kind != b.kind || a.name != b.name || a.bit != b.bit || !(a.pattern == b.pattern) ||
      a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (a.children[i] != b.children[i]) return false;
  }
  return true;
}

namespace {

void collect_quantum(const Term &t, std::vector<std::string> &out, NameSet &seen) {
  if (t.is(TermKind::QuantumVar)) {
    if (seen.insert(t.name()).second) out.push_back(t.name());
    return;
  }
  for (const auto &c : t.children()) collect_quantum(c, out, seen);
}

void collect_free_classical(const Term &t, NameSet &bound, NameSet &out) {
  switch (t.kind()) {
    case TermKind::ClassicalVar:
      if (!bound.count(t.name())) out.insert(t.name());
      return;
    case TermKind::Lambda: {
      std::vector<std::string> added;
      for (const auto &n : t.pattern().names) {
        if (bound.insert(n).second) added.push_back(n);
      }
      collect_free_classical(t.child(0), bound, out);
      for (const auto &n : added) bound.erase(n);
      return;
    }
    default:
      for (const auto &c : t.children()) collect_free_classical(c, bound, out);
  }
}

// Rebuilds `t` only when a child actually changed, preserving sharing.
Term map_children(const Term &t, const std::function<Term(const Term &)> &f) {
  if (t.children().empty()) return t;
  std::vector<Term> next;
  next.reserve(t.children().size());
  bool changed = false;
  for (const auto &c : t.children()) {
    next.push_back(f(c));
    if (!next.back().same_node(c)) changed = true;
  }
  return changed ? t.with_children(std::move(next)) : t;
}

Term subst_impl(const Term &t, const std::map<std::string, Term> &subst, const NameSet &subst_fv) {
  switch (t.kind()) {
    case TermKind::ClassicalVar: {
      auto it = subst.find(t.name());
      return it == subst.end() ? t : it->second;
    }
    case TermKind::Lambda: {
      std::map<std::string, Term> inner = subst;
      for (const auto &n : t.pattern().names) inner.erase(n);
      if (inner.empty()) return t;
      const NameSet body_fv = free_classical_vars(t.child(0));
      bool relevant = false;
      for (const auto &[k, v] : inner) {
        if (body_fv.count(k)) relevant = true;
      }
      if (!relevant) return t;

      Pattern pattern = t.pattern();
      Term body = t.child(0);
      NameSet avoid = subst_fv;
      avoid.insert(body_fv.begin(), body_fv.end());
      for (const auto &[k, v] : inner) avoid.insert(k);
      for (const auto &n : pattern.names) avoid.insert(n);
      std::map<std::string, Term> rename;
      for (auto &n : pattern.names) {
        if (subst_fv.count(n)) {
          std::string fresh = fresh_name(n, avoid);
          avoid.insert(fresh);
          rename.emplace(n, Term::classical_var(fresh));
          n = fresh;
        }
      }
      if (!rename.empty()) {
        NameSet rename_fv;
        for (const auto &[k, v] : rename) rename_fv.insert(v.name());
        body = subst_impl(body, rename, rename_fv);
      }
      return Term::lambda(std::move(pattern), subst_impl(body, inner, subst_fv));
    }
    default:
      return map_children(t, [&](const Term &c) { return subst_impl(c, subst, subst_fv); });
  }
}

struct Canonicalizer {
  NameSet avoid;
  int counter = 0;

  std::string next() {
    for (;;) {
      std::string n = "x" + std::to_string(counter++);
      if (!avoid.count(n)) return n;
    }
  }

  Term run(const Term &t, std::map<std::string, std::string> &env) {
    switch (t.kind()) {
      case TermKind::ClassicalVar: {
        auto it = env.find(t.name());
        if (it == env.end() || it->second == t.name()) return t;
        return Term::classical_var(it->second);
      }
      case TermKind::Lambda: {
        Pattern p = t.pattern();
        std::map<std::string, std::string> inner = env;
        for (auto &n : p.names) {
          std::string fresh = next();
          inner[n] = fresh;
          n = fresh;
        }
        Term body = run(t.child(0), inner);
        if (p == t.pattern() && body.same_node(t.child(0))) return t;
        return Term::lambda(std::move(p), std::move(body));
      }
      default:
        return map_children(t, [&](const Term &c) { return run(c, env); });
    }
  }
};

Term unshadow(const Term &t, std::map<std::string, std::string> &env, NameSet &scope, NameSet &avoid) {
  switch (t.kind()) {
    case TermKind::ClassicalVar: {
      auto it = env.find(t.name());
      if (it == env.end() || it->second == t.name()) return t;
      return Term::classical_var(it->second);
    }
    case TermKind::Lambda: {
      Pattern p = t.pattern();
      std::map<std::string, std::string> inner = env;
      std::vector<std::string> added;
      for (auto &n : p.names) {
        std::string use = n;
        if (scope.count(n)) {
          use = fresh_name(n, avoid);
        }
        avoid.insert(use);
        inner[n] = use;
        if (scope.insert(use).second) added.push_back(use);
        n = use;
      }
      Term body = unshadow(t.child(0), inner, scope, avoid);
      for (const auto &n : added) scope.erase(n);
      if (p == t.pattern() && body.same_node(t.child(0))) return t;
      return Term::lambda(std::move(p), std::move(body));
    }
    default:
      return map_children(t, [&](const Term &c) { return unshadow(c, env, scope, avoid); });
  }
}

void collect_all_names(const Term &t, NameSet &out) {
  if (t.is(TermKind::ClassicalVar)) out.insert(t.name());
  if (t.is(TermKind::Lambda)) out.insert(t.pattern().names.begin(), t.pattern().names.end());
  for (const auto &c : t.children()) collect_all_names(c, out);
}

}  // namespace

NameSet free_quantum_vars(const Term &t) {
  std::vector<std::string> order;
  NameSet seen;
  collect_quantum(t, order, seen);
  return seen;
}

std::vector<std::string> quantum_vars_in_order(const Term &t) {
  std::vector<std::string> order;
  NameSet seen;
  collect_quantum(t, order, seen);
  return order;
}

NameSet free_classical_vars(const Term &t) {
  NameSet bound, out;
  collect_free_classical(t, bound, out);
  return out;
}

Term substitute(const Term &t, const std::string &x, const Term &s) {
  return substitute(t, std::map<std::string, Term>{{x, s}});
}

Term substitute(const Term &t, const std::map<std::string, Term> &subst) {
  if (subst.empty()) return t;
  NameSet fv;
  for (const auto &[k, v] : subst) {
    NameSet f = free_classical_vars(v);
    fv.insert(f.begin(), f.end());
  }
  return subst_impl(t, subst, fv);
}

Term rename_quantum_vars(const Term &t, const std::map<std::string, std::string> &renaming) {
  if (t.is(TermKind::QuantumVar)) {
    auto it = renaming.find(t.name());
    if (it == renaming.end() || it->second == t.name()) return t;
    return Term::quantum_var(it->second);
  }
  return map_children(t, [&](const Term &c) { return rename_quantum_vars(c, renaming); });
}

Term alpha_canonical(const Term &t) {
  Canonicalizer c;
  c.avoid = free_classical_vars(t);
  std::map<std::string, std::string> env;
  return c.run(t, env);
}

bool alpha_equivalent(const Term &a, const Term &b) { return alpha_canonical(a) == alpha_canonical(b); }

Term rename_shadowing_binders(const Term &t, const NameSet &outer) {
  NameSet avoid = outer;
  collect_all_names(t, avoid);
  NameSet scope = outer;
  NameSet fv = free_classical_vars(t);
  scope.insert(fv.begin(), fv.end());
  std::map<std::string, std::string> env;
  return unshadow(t, env, scope, avoid);
}

std::size_t term_size(const Term &t) {
  std::size_t n = 1;
  for (const auto &c : t.children()) n += term_size(c);
  return n;
}

std::size_t abstraction_size(const Term &t) {
  std::size_t total = t.is(TermKind::Lambda) ? term_size(t.child(0)) : 0;
  for (const auto &c : t.children()) total += abstraction_size(c);
  return total;
}

std::string fresh_name(const std::string &base, const NameSet &avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "x";
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

bool natural_less(const std::string &a, const std::string &b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      // strip leading zeros for the numeric comparison
      std::size_t za = na.find_first_not_of('0'), zb = nb.find_first_not_of('0');
      std::string sa = za == std::string::npos ? "" : na.substr(za);
      std::string sb = zb == std::string::npos ? "" : nb.substr(zb);
      if (sa.size() != sb.size()) return sa.size() < sb.size();
      if (sa != sb) return sa < sb;
      if (na.size() != nb.size()) return na.size() < nb.size();
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return (a.size() - i) < (b.size() - j);
}

}  // namespace qstar
