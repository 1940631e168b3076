#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simlda::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv and runs one subcommand (generate, fit, eval, experiment,
/// coherence, serve, verify). Data goes to `out`, diagnostics to `err`.
/// Returns 0 on success, 2 on usage errors and 1 on runtime errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Closest candidate by edit distance, or empty if nothing is close.
std::string nearest(const std::string& word, const std::vector<std::string>& candidates);

}  // namespace simlda::cli
