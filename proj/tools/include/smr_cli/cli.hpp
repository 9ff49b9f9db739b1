#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace smr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNone = 2;  // proved infeasible, or no solution within the bound

// Entry point of the `smr` tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Copy of a report with every "*runtime_ms" member removed, recursively.
nlohmann::json without_timings(const nlohmann::json& report);

}  // namespace smr::cli
