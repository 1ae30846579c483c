#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lginet/model/config.hpp"

namespace lginet {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 1;      // malformed file or data
inline constexpr int kExitContract = 2;      // bad config, flags, or contract violation
inline constexpr int kExitGradcheck = 3;     // gradient check above tolerance

inline constexpr double kGradcheckTolerance = 1e-4;

// Model used by `gradcheck` before any --config overrides.
ModelConfig gradcheck_model_config();

// `args` excludes the program name. Normal output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lginet
