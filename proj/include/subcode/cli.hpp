#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subcode {

// Exit statuses of the command-line front end
enum ExitCode : int {
    exit_ok = 0,
    exit_negative = 1, // verification failure or no answer
    exit_usage = 2,
    exit_io = 3,       // unreadable file or malformed input
    exit_budget = 4,   // search budget exhausted before completion
};

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace subcode
