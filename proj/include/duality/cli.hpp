#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace duality::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Without --axes a
/// decomposition command prints its scree table and writes nothing; with
/// --axes q it also writes <stem>_scree.tsv, <stem>_rows.tsv, <stem>_cols.tsv
/// and <stem>_manifest.txt.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace duality::cli
