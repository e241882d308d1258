#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qppinv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainFailure = 1;
inline constexpr int kExitUsage = 2;

// Environment variable naming the LTE fixture used by `table` when
// --fixture is not given.
inline constexpr const char* kFixtureEnv = "QPPINV_FIXTURE";

// Runs one command line. args[0] is the program name. Results go to `out`,
// diagnostics to `err`; `in` feeds `permute` and `verify --input -`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qppinv::cli
