#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qstar {

enum class TermKind {
  ClassicalVar,
  QuantumVar,
  Bang,
  BoolConst,
  Gate,
  New,
  App,
  Meas,
  If,
  Tuple,
  Lambda,
};

enum class PatternKind { Var, Tuple, Bang };

struct Pattern {
  PatternKind kind = PatternKind::Var;
  std::vector<std::string> names;

  static Pattern var(std::string name);
  static Pattern bang(std::string name);
  static Pattern tuple(std::vector<std::string> names);

  bool is_linear() const { return kind != PatternKind::Bang; }
  bool operator==(const Pattern &) const = default;
};

/// Source location of a parsed subterm; 1-based, end exclusive.
struct Span {
  int line = 0;
  int column = 0;
  int end_line = 0;
  int end_column = 0;

  bool valid() const { return line > 0; }
};

/// Immutable, cheaply copyable term handle. Subterms are shared between
/// copies, so terms can be passed freely across threads.
class Term {
 public:
  /// The constant 0.
  Term();

  static Term classical_var(std::string name);
  static Term quantum_var(std::string name);
  static Term bang(Term body);
  static Term bool_const(int bit);
  static Term gate(std::string name);
  static Term new_(Term arg);
  static Term app(Term fun, Term arg);
  static Term meas(Term arg);
  static Term if_(Term cond, Term then_branch, Term else_branch);
  static Term tuple(std::vector<Term> items);
  static Term lambda(Pattern pattern, Term body);

  TermKind kind() const { return node_->kind; }
  /// Variable or gate name; empty for other kinds.
  const std::string &name() const { return node_->name; }
  int bit() const { return node_->bit; }
  const Pattern &pattern() const { return node_->pattern; }
  const std::vector<Term> &children() const { return node_->children; }
  const Term &child(std::size_t i) const { return node_->children.at(i); }
  const Span &span() const { return node_->span; }

  Term with_span(Span span) const;
  /// Same node kind/payload with new children.
  Term with_children(std::vector<Term> children) const;

  bool is(TermKind k) const { return kind() == k; }
  bool is_lambda_with_linear_pattern() const {
    return kind() == TermKind::Lambda && pattern().is_linear();
  }

  /// Exact structural equality (names included, spans ignored).
  bool operator==(const Term &other) const;
  bool operator!=(const Term &other) const { return !(*this == other); }

  bool same_node(const Term &other) const { return node_ == other.node_; }

 private:
  struct Node {
    TermKind kind;
    std::string name;
    int bit = 0;
    Pattern pattern;
    std::vector<Term> children;
    Span span;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term make(Node node);

  std::shared_ptr<const Node> node_;
};

using NameSet = std::set<std::string>;

/// Quantum variables occurring anywhere in the term.
NameSet free_quantum_vars(const Term &t);
/// Quantum variables in order of first left-to-right occurrence.
std::vector<std::string> quantum_vars_in_order(const Term &t);
NameSet free_classical_vars(const Term &t);

/// Capture-avoiding substitution of `s` for the free occurrences of `x`.
Term substitute(const Term &t, const std::string &x, const Term &s);
/// Simultaneous capture-avoiding substitution.
Term substitute(const Term &t, const std::map<std::string, Term> &subst);

/// Renames quantum variables; names missing from the map are kept.
Term rename_quantum_vars(const Term &t,
                         const std::map<std::string, std::string> &renaming);

/// Renames every binder to x0, x1, ... in pre-order, skipping names that
/// are free in the term. Two terms are alpha-equivalent iff their
/// canonical forms are structurally equal.
Term alpha_canonical(const Term &t);
bool alpha_equivalent(const Term &a, const Term &b);

/// Renames binders whose name is already in scope (or in `outer`), so that
/// no binder shadows another visible name.
Term rename_shadowing_binders(const Term &t, const NameSet &outer = {});

/// Number of AST nodes: one per variable, constant, gate, !, new, meas,
/// tuple, application, abstraction and if. Patterns count zero.
std::size_t term_size(const Term &t);

/// Sum over all abstraction subterms of the size of their body.
std::size_t abstraction_size(const Term &t);

/// Returns a name based on `base` that is not in `avoid`.
std::string fresh_name(const std::string &base, const NameSet &avoid);

/// Natural ordering: digit runs compare numerically ("r2" < "r10").
bool natural_less(const std::string &a, const std::string &b);

struct NaturalLess {
  bool operator()(const std::string &a, const std::string &b) const {
    return natural_less(a, b);
  }
};

}  // namespace qstar
