#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace domfilter::cli {

// Exit statuses shared by every command.
enum Exit : int {
    kOk = 0,
    kInconsistent = 1,  // filter: wipeout
    kUsage = 2,
    kInternal = 3,      // also oracle mismatches and lattice violations
    kTimeout = 4,
};

// Runs one command line (without the program name). `in` backs `--in -` and a missing --in.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace domfilter::cli
