#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seqcontract::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kValidation = 1;
inline constexpr int kCapacity = 2;
inline constexpr int kUsage = 64;

// args excludes the program name. Reports go to out as one JSON document,
// diagnostics and usage text to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Lowercase hex SHA-256 of the canonical (normalized, compact) instance
// document.
std::string digest(const std::string& canonical);

}  // namespace seqcontract::cli
