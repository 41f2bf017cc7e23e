#pragma once

#include "cli/config.hpp"

namespace levyspec::cli {

// Each returns the process exit code; failures throw CliError.
int cmd_esd(const RunConfig& c);
int cmd_pwit(const RunConfig& c);
int cmd_rde(const RunConfig& c);
int cmd_invariant(const RunConfig& c);
int cmd_figure1(const RunConfig& c);
int cmd_selftest(const RunConfig& c);

}  // namespace levyspec::cli
