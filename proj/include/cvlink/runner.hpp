#pragma once

#include <optional>
#include <string>

#include "cvlink/config.hpp"

namespace cvlink {

// Fully composed output of one run. Nothing touches the filesystem until
// the run has finished, so a failing run never leaves a partial file.
struct RunOutputs {
  std::string main_text;
  std::optional<std::string> dump_text;  // per-pulse CSV, simulate only
};

RunOutputs run_budget(const RunConfig& config);
RunOutputs run_alpha_sweep(const RunConfig& config);
RunOutputs run_keyrate_sweep(const RunConfig& config);
RunOutputs run_simulate(const RunConfig& config);

// Dispatch on config.mode.
RunOutputs run(const RunConfig& config);

}  // namespace cvlink
