#include "qstar/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "qstar/harness.hpp"
#include "qstar/parser.hpp"
#include "qstar/wellform.hpp"

namespace qstar {

namespace {

// Raised for conditions that map directly to an exit code.
struct CliFailure {
  int code;
  std::string message;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{kExitUsage, "cannot open " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Term load_term(const RunConfig &config) {
  const std::string source = read_file(config.input);
  try {
    return parse_term(source);
  } catch (const ParseError &e) {
    throw CliFailure{kExitUsage, config.input + ":" + e.what()};
  }
}

std::string location(const RunConfig &config, const Span &span) {
  if (!span.valid()) return config.input;
  return config.input + ":" + std::to_string(span.line) + ":" + std::to_string(span.column);
}

// Loads and well-forms the input; returns its initial configuration.
Configuration load_configuration(const RunConfig &config, const GateRegistry &gates) {
  Term t = load_term(config);
  try {
    check_wf(Environment{{}, free_quantum_vars(t), {}}, t, gates);
  } catch (const WfError &e) {
    throw CliFailure{kExitSemantic, location(config, e.subterm().span()) + ": " + e.what() + " in `" +
                                        print_term(e.subterm()) + "`"};
  }
  return Configuration(t);
}

Strategy make_strategy(const RunConfig &config) {
  try {
    return Strategy::parse(config.strategy, config.seed);
  } catch (const std::invalid_argument &e) {
    throw CliFailure{kExitUsage, e.what()};
  }
}

std::string format_probability(double p) {
  std::ostringstream out;
  out.precision(12);
  out << p;
  return out.str();
}

// Term, plus the register when it is not the scalar 1.
std::string outcome_text(const Configuration &c) {
  std::string s = print_term(c.term());
  const auto &amps = c.register_().amplitudes();
  if (!c.qvars().empty() || amps.size() != 1 || std::abs(amps[0] - Amplitude(1)) > kRegisterTolerance) {
    s += "\tregister=" + describe(c.register_());
  }
  return s;
}

template <typename F>
int guarded(std::ostream &err, F &&body) {
  try {
    return body();
  } catch (const CliFailure &f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
}

}  // namespace

void print_config(const RunConfig &config, const GateRegistry &gates, std::ostream &out) {
  out << "strategy = " << config.strategy << "\n"
      << "seed = " << config.seed << "\n"
      << "depth = " << config.depth << "\n"
      << "steps = " << config.steps << "\n"
      << "jobs = " << config.jobs << "\n"
      << "json = " << (config.json ? "true" : "false") << "\n"
      << "distribution-tolerance = " << kDistributionTolerance << "\n"
      << "register-tolerance = " << kRegisterTolerance << "\n"
      << "gates-file = " << (config.gates_file.empty() ? "(none)" : config.gates_file) << "\n"
      << "gates = " << gates.size() << "\n";
}

int cmd_check(const RunConfig &config, const GateRegistry &gates, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    Term t = load_term(config);
    try {
      Derivation d = check_wf(Environment{{}, free_quantum_vars(t), {}}, t, gates);
      out << "OK\n" << format_derivation(d);
      return int{kExitOk};
    } catch (const WfError &e) {
      err << location(config, e.subterm().span()) << ": " << e.what() << " in `" << print_term(e.subterm()) << "`\n";
      return int{kExitSemantic};
    }
  });
}

int cmd_run(const RunConfig &config, const GateRegistry &gates, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    Configuration c = load_configuration(config, gates);
    Strategy strat = make_strategy(config);
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    nlohmann::json trajectory = nlohmann::json::array();
    if (config.json) trajectory.push_back({{"step", 0}, {"configuration", to_json(c)}});
    else out << "0\tstart\t1\t" << c.to_string() << "\n";
    for (std::size_t step = 1;; ++step) {
      std::vector<Redex> redexes = enumerate_redexes(c, gates);
      if (redexes.empty()) break;
      if (step > config.depth) {
        if (config.json) out << trajectory.dump(2) << "\n";
        err << "error: depth exceeded after " << config.depth << " steps\n";
        return int{kExitResource};
      }
      const Redex &r = redexes[strat.choose(c, redexes)];
      std::vector<Step> steps = contract(c, r, std::nullopt, gates);
      std::size_t pick = 0;
      if (steps.size() == 2) pick = unit(rng) < steps[0].probability ? 0 : 1;
      const Step &s = steps[pick];
      std::string label = s.label.to_string();
      if (s.outcome) label += "=" + std::to_string(*s.outcome);
      c = s.result;
      if (config.json) {
        trajectory.push_back(
            {{"step", step}, {"label", label}, {"probability", s.probability}, {"configuration", to_json(c)}});
      } else {
        out << step << "\t" << label << "\t" << format_probability(s.probability) << "\t" << c.to_string() << "\n";
      }
    }
    if (config.json) out << trajectory.dump(2) << "\n";
    else out << "final\t" << c.to_string() << "\n";
    return int{kExitOk};
  });
}

int cmd_dist(const RunConfig &config, const GateRegistry &gates, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    Configuration c = load_configuration(config, gates);
    ProbComputation tree = build_computation(c, make_strategy(config), BuildOptions{config.depth, config.jobs}, gates);
    std::vector<LeafOutcome> dist = leaf_distribution(tree);
    std::stable_sort(dist.begin(), dist.end(), [](const LeafOutcome &a, const LeafOutcome &b) {
      if (a.probability != b.probability) return a.probability > b.probability;
      return a.config.key() < b.config.key();
    });
    const bool maximal = tree.is_maximal();
    if (config.json) {
      nlohmann::json j;
      j["strategy"] = config.strategy;
      j["depth"] = config.depth;
      j["maximal"] = maximal;
      j["outcomes"] = nlohmann::json::array();
      for (const auto &o : dist) {
        j["outcomes"].push_back({{"probability", o.probability}, {"count", o.count}, {"configuration", to_json(o.config)}});
      }
      j["prob_any"] = prob_any(tree);
      j["count_any"] = count_any(tree);
      out << j.dump(2) << "\n";
    } else {
      for (const auto &o : dist) {
        out << format_probability(o.probability) << "\t" << outcome_text(o.config) << "\tcount=" << o.count << "\n";
      }
      out << "any\t" << format_probability(prob_any(tree)) << "\tcount=" << count_any(tree) << "\n";
      if (!maximal) out << "not maximal: depth bound " << config.depth << " reached\n";
    }
    return int{kExitOk};
  });
}

int cmd_mixed(const RunConfig &config, const GateRegistry &gates, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    Configuration c = load_configuration(config, gates);
    std::vector<MixedState> states = run_mixed(MixedState::point(c), make_strategy(config), config.steps, gates);
    if (config.json) {
      nlohmann::json j = nlohmann::json::array();
      for (const auto &m : states) j.push_back(to_json(m));
      out << j.dump(2) << "\n";
      return int{kExitOk};
    }
    for (std::size_t k = 0; k < states.size(); ++k) {
      out << "step " << k << "\n";
      for (const auto &e : states[k].sorted()) out << format_probability(e.probability) << "\t" << outcome_text(e.config) << "\n";
    }
    const auto tiny = states.back().negligible();
    if (!tiny.empty()) out << "negligible entries (< " << kNegligibleProbability << "): " << tiny.size() << "\n";
    return int{kExitOk};
  });
}

int cmd_trace(const RunConfig &config, const GateRegistry &gates, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    Configuration c = load_configuration(config, gates);
    ProbComputation tree = build_computation(c, make_strategy(config), BuildOptions{config.depth, config.jobs}, gates);
    if (config.json) out << to_json(tree).dump(2) << "\n";
    else out << format_trace(tree);
    return int{kExitOk};
  });
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Reference interpreter and verification workbench for the quantum lambda calculus Q*", "qstar"};
  app.require_subcommand(0, 1);
  RunConfig config;
  VerifyOptions verify;
  bool show_config = false;
  app.add_flag("--show-config", show_config, "Print the effective configuration and exit");

  const auto add_common = [&](CLI::App *sub, bool with_file) {
    if (with_file) sub->add_option("FILE", config.input, "Source file (.qst)")->required();
    sub->add_option("--gates", config.gates_file, "Extra gate definitions");
    sub->add_flag("--show-config", show_config, "Print the effective configuration and exit");
  };
  const auto add_reduction = [&](CLI::App *sub) {
    sub->add_option("--strategy", config.strategy, "leftmost, rightmost or random")->capture_default_str();
    sub->add_option("--seed", config.seed, "Seed for random choices")->capture_default_str();
    sub->add_option("--depth", config.depth, "Depth bound")->capture_default_str();
    sub->add_option("--jobs", config.jobs, "Worker threads for tree construction")->capture_default_str();
    sub->add_flag("--json", config.json, "JSON output");
  };

  CLI::App *check = app.add_subcommand("check", "Well-form a term and print its derivation");
  add_common(check, true);
  CLI::App *run = app.add_subcommand("run", "Sample one reduction sequence");
  add_common(run, true);
  add_reduction(run);
  CLI::App *dist = app.add_subcommand("dist", "Normal-form distribution of the computation tree");
  add_common(dist, true);
  add_reduction(dist);
  CLI::App *mixed = app.add_subcommand("mixed", "Mixed-state computation");
  add_common(mixed, true);
  add_reduction(mixed);
  mixed->add_option("--steps", config.steps, "Number of steps")->capture_default_str();
  CLI::App *trace = app.add_subcommand("trace", "Print the computation tree");
  add_common(trace, true);
  add_reduction(trace);
  CLI::App *ver = app.add_subcommand("verify", "Run the property suites");
  add_common(ver, false);
  ver->add_option("--suite", verify.suite, "diamond, confluence, ktermination, measurement-algebra, mixed or all")
      ->capture_default_str();
  ver->add_option("--size", verify.size, "Exhaustive enumeration bound (AST nodes)")->capture_default_str();
  ver->add_option("--sample-size", verify.sample_size, "Largest sampled size")->capture_default_str();
  ver->add_option("--per-size", verify.per_size, "Samples per size above --size")->capture_default_str();
  ver->add_option("--depth", verify.depth, "Depth bound")->capture_default_str();
  ver->add_option("--seed", verify.seed, "Seed")->capture_default_str();
  ver->add_flag("--json", config.json, "JSON output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int{kExitOk} : int{kExitUsage};
  }

  GateRegistry gates = GateRegistry::builtin();
  if (!config.gates_file.empty()) {
    try {
      gates.load_file(config.gates_file);
    } catch (const std::exception &e) {
      err << "error: " << config.gates_file << ": " << e.what() << "\n";
      return kExitUsage;
    }
  }
  if (show_config) {
    print_config(config, gates, out);
    return kExitOk;
  }
  if (*check) return cmd_check(config, gates, out, err);
  if (*run) return cmd_run(config, gates, out, err);
  if (*dist) return cmd_dist(config, gates, out, err);
  if (*mixed) return cmd_mixed(config, gates, out, err);
  if (*trace) return cmd_trace(config, gates, out, err);
  if (*ver) {
    return guarded(err, [&] {
      std::vector<SuiteResult> results;
      try {
        results = run_verify(verify, gates);
      } catch (const std::invalid_argument &e) {
        throw CliFailure{kExitUsage, e.what()};
      } catch (const CorpusError &e) {
        throw CliFailure{kExitUsage, e.what()};
      }
      bool ok = true;
      nlohmann::json j = nlohmann::json::array();
      for (const auto &r : results) {
        ok = ok && r.ok();
        if (config.json) {
          j.push_back(to_json(r));
          continue;
        }
        out << (r.ok() ? "PASS" : "FAIL") << "\t" << r.name << "\tchecked=" << r.checked
            << "\tfailures=" << r.failures << "\tinconclusive=" << r.inconclusive << "\t"
            << format_probability(r.seconds) << "s\n";
        for (const auto &w : r.witnesses) out << "  " << w << "\n";
      }
      if (config.json) out << j.dump(2) << "\n";
      return ok ? int{kExitOk} : int{kExitSemantic};
    });
  }
  out << app.help();
  return kExitUsage;
}

}  // namespace qstar
