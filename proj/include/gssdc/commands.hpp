#pragma once

#include <cstdint>
#include <string>

namespace gssdc {

// Implementation of the CLI subcommands, factored out so tests can exercise
// exit codes and byte-level outputs without spawning processes. Exit codes:
// 0 success, 1 runtime failure, 2 usage/config error.

struct GraphGenArgs {
  int n = 256;
  int k = 6;
  std::uint64_t seed = 0;
  double theta = 0.0;
  std::string out;
};

struct DesignArgs {
  std::string graph_path;
  std::string prior;        // empty = take from config
  std::string config_path;
  std::string out_path;
  std::string trace_path;      // optional
  std::string partition_path;  // optional
};

struct ExperimentArgs {
  std::string config_path;
  std::string out_dir;
  int jobs = 0;  // 0 = take from config
};

int cmd_graph_gen(const GraphGenArgs& args);
int cmd_design(const DesignArgs& args);
int cmd_experiment(const ExperimentArgs& args);

}  // namespace gssdc
