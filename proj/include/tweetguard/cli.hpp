#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tweetguard {

/// Runs the `tweetguard` command line with `args` (excluding the program
/// name). Returns 0 on success, 1 for user/input errors, 2 for internal errors.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tweetguard
