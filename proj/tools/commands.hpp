#pragma once

namespace lmpred::cli
{
// Parses arguments, runs one subcommand and returns the process exit code.
int run(int argc, char** argv);
}
