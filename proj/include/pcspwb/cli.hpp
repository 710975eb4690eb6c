#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcspwb {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    exit_yes = 0,
    exit_no = 1,
    exit_usage = 2,
    exit_resource = 3
};

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace pcspwb
