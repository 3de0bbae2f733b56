#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "densecap_cli/config.hpp"

namespace densecap::cli {

struct CommandOutput {
    std::string text;
    bool pass = true;
};

CommandOutput cmd_capacity(const RunConfig& config);
CommandOutput cmd_verify(const RunConfig& config);
CommandOutput cmd_simulate(const RunConfig& config);
CommandOutput cmd_entanglement(const RunConfig& config);

CommandOutput run_command(const RunConfig& config);

/// Parses args (without the program name) and runs the command. The report
/// goes to `out` or to --out, diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace densecap::cli
