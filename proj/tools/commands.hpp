#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace limitlab::cli {

inline constexpr const char* kVersion = LIMITLAB_VERSION;

struct RunContext {
  std::string subcommand;  // e.g. "kcycle cantor"
  ExperimentConfig config;
  std::filesystem::path out;
  int workers = 1;
  bool verbose = false;
};

// Subcommand names accepted by run(), in the order usage lists them.
const std::vector<std::string>& subcommands();
std::string usage_text();

// Runs one experiment and writes its artifacts into ctx.out. Throws
// ConfigError for invalid configs and limitlab::Error / NumericError for
// failures inside the computation.
void run(const RunContext& ctx);

}  // namespace limitlab::cli
