#include "qstar/computation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <unordered_map>

namespace qstar {

namespace {

std::uint64_t fnv1a(const std::string &s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Strategy Strategy::random(std::uint64_t seed) {
  Strategy s(Kind::Random);
  s.seed_ = seed;
  return s;
}

Strategy Strategy::scripted(std::vector<std::size_t> choices) {
  Strategy s(Kind::Scripted);
  s.script_ = std::move(choices);
  return s;
}

Strategy Strategy::parse(const std::string &spec, std::uint64_t seed) {
  if (spec == "leftmost") return leftmost();
  if (spec == "rightmost") return rightmost();
  if (spec == "random") return random(seed);
  if (spec.rfind("random:", 0) == 0) {
    try {
      return random(std::stoull(spec.substr(7)));
    } catch (const std::logic_error &) {
    }
  }
  throw std::invalid_argument("unknown strategy '" + spec + "' (expected leftmost, rightmost or random)");
}

std::string Strategy::name() const {
  switch (kind_) {
    case Kind::Leftmost: return "leftmost";
    case Kind::Rightmost: return "rightmost";
    case Kind::Random: return "random:" + std::to_string(seed_);
    case Kind::Scripted: return "scripted";
  }
  return "?";
}

std::size_t Strategy::choose(const Configuration &c, const std::vector<Redex> &redexes) {
  if (redexes.empty()) throw std::invalid_argument("no redex to choose from");
  switch (kind_) {
    case Kind::Leftmost:
      return 0;
    case Kind::Rightmost:
      return redexes.size() - 1;
    case Kind::Random:
      return static_cast<std::size_t>(splitmix64(fnv1a(c.key()) ^ splitmix64(seed_)) % redexes.size());
    case Kind::Scripted: {
      if (cursor_ < script_.size()) {
        const std::size_t pick = script_[cursor_++];
        if (pick < redexes.size()) return pick;
      }
      return 0;
    }
  }
  return 0;
}

ProbComputation ProbComputation::leaf(Configuration c, const GateRegistry &gates) {
  const bool nf = is_normal_form(c, gates);
  return {Kind::Leaf, std::move(c), std::nullopt, 0, 0, nf, {}};
}

ProbComputation ProbComputation::unary(Configuration c, ReductionLabel label, ProbComputation child) {
  if (!label.in_nM()) throw std::invalid_argument("unary computation step must not be a measurement");
  ProbComputation node{Kind::Unary, std::move(c), std::move(label), 0, 0, false, {}};
  node.children.push_back(std::move(child));
  return node;
}

ProbComputation ProbComputation::binary(Configuration c, ReductionLabel label, double p, double q,
                                        ProbComputation left, ProbComputation right) {
  if (label.kind != LabelKind::Meas) throw std::invalid_argument("binary computation step must be a measurement");
  ProbComputation node{Kind::Binary, std::move(c), std::move(label), p, q, false, {}};
  node.children.push_back(std::move(left));
  node.children.push_back(std::move(right));
  return node;
}

bool ProbComputation::is_maximal() const {
  if (kind == Kind::Leaf) return normal_form;
  return std::all_of(children.begin(), children.end(), [](const ProbComputation &c) { return c.is_maximal(); });
}

std::size_t ProbComputation::depth() const {
  std::size_t d = 0;
  for (const auto &c : children) d = std::max(d, c.depth() + 1);
  return d;
}

std::size_t ProbComputation::node_count() const {
  std::size_t n = 1;
  for (const auto &c : children) n += c.node_count();
  return n;
}

namespace {

ProbComputation build(const Configuration &c, Strategy &strat, std::size_t remaining, unsigned jobs,
                      const GateRegistry &gates) {
  std::vector<Redex> redexes = enumerate_redexes(c, gates);
  if (redexes.empty() || remaining == 0) {
    return {ProbComputation::Kind::Leaf, c, std::nullopt, 0, 0, redexes.empty(), {}};
  }
  const Redex &chosen = redexes[strat.choose(c, redexes)];
  std::vector<Step> steps = contract(c, chosen, std::nullopt, gates);
  if (chosen.label.kind != LabelKind::Meas) {
    return ProbComputation::unary(c, chosen.label, build(steps[0].result, strat, remaining - 1, jobs, gates));
  }
  if (jobs > 1 && strat.kind() != Strategy::Kind::Scripted) {
    Strategy right_strat = strat;
    auto right = std::async(std::launch::async, [&, right_strat]() mutable {
      return build(steps[1].result, right_strat, remaining - 1, jobs / 2, gates);
    });
    ProbComputation left = build(steps[0].result, strat, remaining - 1, jobs - jobs / 2, gates);
    return ProbComputation::binary(c, chosen.label, steps[0].probability, steps[1].probability, std::move(left),
                                   right.get());
  }
  ProbComputation left = build(steps[0].result, strat, remaining - 1, jobs, gates);
  ProbComputation right = build(steps[1].result, strat, remaining - 1, jobs, gates);
  return ProbComputation::binary(c, chosen.label, steps[0].probability, steps[1].probability, std::move(left),
                                 std::move(right));
}

void require_normal_form(const Configuration &c, const GateRegistry &gates) {
  if (!is_normal_form(c, gates)) throw MeasureError("configuration " + c.to_string() + " is not a normal form");
}

double prob_of_impl(const ProbComputation &p, const Configuration &c) {
  switch (p.kind) {
    case ProbComputation::Kind::Leaf:
      return p.config.equals(c) ? delta(p.config) : 0.0;
    case ProbComputation::Kind::Unary:
      return prob_of_impl(p.children[0], c);
    case ProbComputation::Kind::Binary:
      return p.p * prob_of_impl(p.children[0], c) + p.q * prob_of_impl(p.children[1], c);
  }
  return 0;
}

std::size_t count_of_impl(const ProbComputation &p, const Configuration &c) {
  if (p.kind == ProbComputation::Kind::Leaf) return p.config.equals(c) ? 1 : 0;
  std::size_t n = 0;
  for (const auto &ch : p.children) n += count_of_impl(ch, c);
  return n;
}

void collect_leaves(const ProbComputation &p, double mass, std::vector<LeafOutcome> &out,
                    std::unordered_map<std::string, std::vector<std::size_t>> &index) {
  switch (p.kind) {
    case ProbComputation::Kind::Leaf: {
      if (!p.normal_form) return;
      auto &bucket = index[p.config.key()];
      for (std::size_t i : bucket) {
        if (out[i].config.equals(p.config)) {
          out[i].probability += mass * delta(p.config);
          out[i].count += 1;
          return;
        }
      }
      bucket.push_back(out.size());
      out.push_back({p.config, mass * delta(p.config), 1});
      return;
    }
    case ProbComputation::Kind::Unary:
      collect_leaves(p.children[0], mass, out, index);
      return;
    case ProbComputation::Kind::Binary:
      collect_leaves(p.children[0], mass * p.p, out, index);
      collect_leaves(p.children[1], mass * p.q, out, index);
      return;
  }
}

std::string format_probability(double p) {
  std::ostringstream out;
  out.precision(12);
  out << p;
  return out.str();
}

void trace(const ProbComputation &p, int depth, const std::string &edge, double prob, std::ostringstream &out) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << edge << '\t' << format_probability(prob) << '\t'
      << p.config.to_string();
  if (p.kind == ProbComputation::Kind::Leaf) out << (p.normal_form ? "\t(normal form)" : "\t(depth bound)");
  out << '\n';
  if (p.kind == ProbComputation::Kind::Unary) {
    trace(p.children[0], depth + 1, p.label->to_string(), 1.0, out);
  } else if (p.kind == ProbComputation::Kind::Binary) {
    trace(p.children[0], depth + 1, p.label->to_string() + "=0", p.p, out);
    trace(p.children[1], depth + 1, p.label->to_string() + "=1", p.q, out);
  }
}

}  // namespace

ProbComputation build_computation(const Configuration &root, Strategy strat, std::size_t max_depth,
                                  const GateRegistry &gates) {
  return build_computation(root, std::move(strat), BuildOptions{max_depth, 1}, gates);
}

ProbComputation build_computation(const Configuration &root, Strategy strat, const BuildOptions &options,
                                  const GateRegistry &gates) {
  return build(root, strat, options.max_depth, std::max(1u, options.jobs), gates);
}

int delta(const Configuration &c) { return c.register_().is_zero() ? 0 : 1; }

double prob_of(const ProbComputation &p, const Configuration &c, const GateRegistry &gates) {
  require_normal_form(c, gates);
  return prob_of_impl(p, c);
}

std::size_t count_of(const ProbComputation &p, const Configuration &c, const GateRegistry &gates) {
  require_normal_form(c, gates);
  return count_of_impl(p, c);
}

double prob_any(const ProbComputation &p) {
  switch (p.kind) {
    case ProbComputation::Kind::Leaf:
      return p.normal_form ? delta(p.config) : 0.0;
    case ProbComputation::Kind::Unary:
      return prob_any(p.children[0]);
    case ProbComputation::Kind::Binary:
      return p.p * prob_any(p.children[0]) + p.q * prob_any(p.children[1]);
  }
  return 0;
}

std::size_t count_any(const ProbComputation &p) {
  if (p.kind == ProbComputation::Kind::Leaf) return p.normal_form ? 1 : 0;
  std::size_t n = 0;
  for (const auto &c : p.children) n += count_any(c);
  return n;
}

std::size_t branch_degree(const ProbComputation &p) {
  if (p.kind == ProbComputation::Kind::Leaf) return 1;
  std::size_t b = 0;
  for (const auto &c : p.children) b += branch_degree(c);
  return b;
}

std::size_t weight(const ProbComputation &p) {
  switch (p.kind) {
    case ProbComputation::Kind::Leaf:
      return 0;
    case ProbComputation::Kind::Unary: {
      const std::size_t w = weight(p.children[0]);
      return p.label->in_K() ? w : branch_degree(p.children[0]) + w;
    }
    case ProbComputation::Kind::Binary:
      return branch_degree(p.children[0]) + branch_degree(p.children[1]) + weight(p.children[0]) +
             weight(p.children[1]);
  }
  return 0;
}

bool is_subcomputation(const ProbComputation &r, const ProbComputation &p) {
  if (!r.config.equals(p.config)) return false;
  switch (r.kind) {
    case ProbComputation::Kind::Leaf:
      return true;
    case ProbComputation::Kind::Unary:
      return p.kind == ProbComputation::Kind::Unary && is_subcomputation(r.children[0], p.children[0]);
    case ProbComputation::Kind::Binary:
      return p.kind == ProbComputation::Kind::Binary && std::abs(r.p - p.p) <= kRegisterTolerance &&
             std::abs(r.q - p.q) <= kRegisterTolerance && is_subcomputation(r.children[0], p.children[0]) &&
             is_subcomputation(r.children[1], p.children[1]);
  }
  return false;
}

std::vector<LeafOutcome> leaf_distribution(const ProbComputation &p) {
  std::vector<LeafOutcome> out;
  std::unordered_map<std::string, std::vector<std::size_t>> index;
  collect_leaves(p, 1.0, out, index);
  return out;
}

DepthSeries prob_series(const Configuration &root, const Strategy &strat, const Configuration &target,
                        const std::vector<std::size_t> &depths, const GateRegistry &gates) {
  require_normal_form(target, gates);
  DepthSeries s;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (i > 0 && depths[i] <= depths[i - 1]) throw std::invalid_argument("depth schedule must be strictly increasing");
    ProbComputation tree = build_computation(root, strat, depths[i], gates);
    s.depths.push_back(depths[i]);
    s.prob.push_back(prob_of_impl(tree, target));
    s.prob_any.push_back(prob_any(tree));
    s.maximal_at_last = tree.is_maximal();
  }
  if (s.prob.size() >= 2) s.last_increment = s.prob.back() - s.prob[s.prob.size() - 2];
  return s;
}

std::string format_trace(const ProbComputation &p) {
  std::ostringstream out;
  trace(p, 0, "root", 1.0, out);
  return out.str();
}

nlohmann::json to_json(const ProbComputation &p) {
  nlohmann::json j;
  j["config"] = to_json(p.config);
  switch (p.kind) {
    case ProbComputation::Kind::Leaf:
      j["kind"] = "leaf";
      j["normal_form"] = p.normal_form;
      break;
    case ProbComputation::Kind::Unary:
      j["kind"] = "unary";
      j["label"] = p.label->to_string();
      j["child"] = to_json(p.children[0]);
      break;
    case ProbComputation::Kind::Binary:
      j["kind"] = "binary";
      j["label"] = p.label->to_string();
      j["p"] = p.p;
      j["q"] = p.q;
      j["left"] = to_json(p.children[0]);
      j["right"] = to_json(p.children[1]);
      break;
  }
  return j;
}

}  // namespace qstar
