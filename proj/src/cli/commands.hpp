// commands.hpp — subcommand implementations for the hetspec tool.
#pragma once

#include "config.hpp"

namespace hetspec::cli {

void cmd_spectrum(const RunConfig& cfg);
void cmd_simulate(const RunConfig& cfg);
void cmd_cooling(const RunConfig& cfg);
void cmd_bluecurve(const RunConfig& cfg);

} // namespace hetspec::cli
