#pragma once

#include <string>
#include <vector>

namespace mfl::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kNotCertified = 2;
inline constexpr int kSubsetLimit = 3;

/// Entry point of the `mfl` tool: solve, exact, gen, verify, bench.
int main(int argc, char** argv);

/// Same as main() with an argument vector (argv[0] excluded).
int run(const std::vector<std::string>& args);

}  // namespace mfl::cli
