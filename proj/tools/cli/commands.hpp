#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace toricfol::cli {

/// Runs one command. Exit codes: 0 success, 1 domain error (the violated
/// invariant is named on `err`), 2 usage or parse error (with a location).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Schema tag written into every report.
inline constexpr const char* kReportSchema = "toricfol.report/1";

}  // namespace toricfol::cli
