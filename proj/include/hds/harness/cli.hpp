#pragma once

#include <iosfwd>

namespace hds::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Subcommands simulate, estimate, compare and verify, each taking
/// --config FILE, --seed N and --out DIR. Seed sources in increasing
/// priority: HDS_SEED, the config file, --seed.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hds::harness
