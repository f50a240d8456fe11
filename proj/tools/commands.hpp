#ifndef MGPCLEAR_TOOLS_COMMANDS_HPP
#define MGPCLEAR_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "mgp/clearing.hpp"

namespace mgp::tool {

enum class Format { Json, Csv };

/// Everything a subcommand needs, resolved from command-line flags.
struct RunRequest {
    std::string topology_path;
    std::string offers_path;
    std::string limits_path;  // empty: no transit limits
    std::vector<int> hours;   // sorted, unique; empty: every hour present in the offers file
    std::string output_path;  // empty: write results to stdout
    Format output_format = Format::Json;
    ClearingConfig config;
    // curves only
    int curve_hour = 0;
    bool zones_given = false;           // distinguishes "--zones" absent (all) from empty (none)
    std::vector<std::string> zone_subset;
};

/// "3", "1-4", "1,5,9-11" → sorted unique hours; rejects anything outside 1..24.
std::vector<int> parse_hours_spec(const std::string& spec);

/// "marginal" | "dual" | "both".
ClearingConfig::PriceMode parse_price_mode(const std::string& word);

/// "CODE_A-CODE_B" → edge, "none" → disabled ring opening.
std::optional<std::pair<std::string, std::string>> parse_ring_spec(const std::string& spec);

/// Clears the requested hours and writes results (JSON array or per-zone CSV).
/// Per-hour summary lines (macrozone count, price range, wall-clock ms) go to
/// `out`. Returns 0 on success, 2 on input/validation failure, 1 on internal
/// error; failures are described on `err`.
int cmd_clear(const RunRequest& request, std::ostream& out, std::ostream& err);

/// Writes the aggregated supply/demand step curves of one hour as
/// side,cumulative_mwh,price CSV. Same exit-code contract as cmd_clear.
int cmd_curves(const RunRequest& request, std::ostream& out, std::ostream& err);

/// Parses all given inputs and reports every problem found (parse issues,
/// unsupported cycles, inconsistent limits, empty hours) without stopping at
/// the first one. Prints one finding per line plus a total; exit 0 iff clean.
int cmd_validate(const RunRequest& request, std::ostream& out, std::ostream& err);

}  // namespace mgp::tool

#endif
