#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "report.hpp"
#include "smr_cli/cli.hpp"

namespace smr::cli {

struct Globals {
  std::string json_path;
  std::uint64_t seed = 0;
  int limit = OracleGuard{}.max_agents;  // agent cap for the exhaustive oracles
  int jobs = 1;
};

struct CommandResult {
  int code = kExitOk;
  json doc;  // written to --json when set
};

std::string read_file(const std::string& path);

// Empty or whitespace-only text is an empty configuration.
CommandResult run_bench(const std::string& config_text, const Globals& globals, std::ostream& out);

}  // namespace smr::cli
