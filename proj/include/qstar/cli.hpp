#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qstar/gates.hpp"

namespace qstar {

enum ExitCode : int { kExitOk = 0, kExitSemantic = 1, kExitUsage = 2, kExitResource = 3 };

struct RunConfig {
  std::string input;
  std::string strategy = "leftmost";
  std::uint64_t seed = 0;
  std::size_t depth = 64;
  std::size_t steps = 16;
  unsigned jobs = 1;
  bool json = false;
  std::string gates_file;
};

/// Prints the effective configuration, defaults included.
void print_config(const RunConfig &config, const GateRegistry &gates, std::ostream &out);

int cmd_check(const RunConfig &config, const GateRegistry &gates, std::ostream &out, std::ostream &err);
int cmd_run(const RunConfig &config, const GateRegistry &gates, std::ostream &out, std::ostream &err);
int cmd_dist(const RunConfig &config, const GateRegistry &gates, std::ostream &out, std::ostream &err);
int cmd_mixed(const RunConfig &config, const GateRegistry &gates, std::ostream &out, std::ostream &err);
int cmd_trace(const RunConfig &config, const GateRegistry &gates, std::ostream &out, std::ostream &err);

/// Full command line, argv[0] excluded.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qstar
