#pragma once

#include "config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace nfc::cli {

const std::vector<std::string>& command_names();

// Runs one subcommand and writes its artifacts into outdir.
// Exit codes: 0 success, 2 infeasible (InfeasibleData, SearchExhausted), 1 any other error.
int run_command(const std::string& command, const RunConfig& cfg, const std::string& outdir, std::ostream& err);

}  // namespace nfc::cli
