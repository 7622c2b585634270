#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwre/config.hpp"

namespace rwre {

struct RunOptions {
  int workers = 1;
  bool per_trial = false;
  bool emit_dot = false;
};

struct RunOutput {
  int exit_code = 0;                    // 0 ok, 3 property-check failure
  std::string summary;                  // one self-describing record
  std::vector<std::string> trial_lines; // newline-delimited per-trial records
  std::string dot;                      // DOT text when a graph was built
};

// Executes the named experiment. Configuration problems throw
// std::invalid_argument (the caller maps those to exit code 2); a failed
// property check returns exit_code 3 with the summary describing what broke.
RunOutput run_experiment(const ExperimentConfig& cfg, std::uint64_t effective_seed,
                         const RunOptions& opts);

}  // namespace rwre
