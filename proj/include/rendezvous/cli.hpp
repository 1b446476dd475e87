#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace rendezvous::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,            ///< bad flags, unparsable or out-of-range values
    kHorizonExceeded = 2,  ///< simulate: no rendezvous before the horizon
    kBoundFailed = 3,      ///< sweep: the supremum contradicts the expected bound
};

struct RunConfig {
    std::string subcommand;
    std::string n;
    std::string c;
    std::optional<std::string> d;
    std::string program = "dr";
    std::optional<std::string> horizon;
    std::optional<std::string> epsilon;
    int grid = 64;
    unsigned jobs = 0;
    std::string format = "json";
    std::optional<std::string> out;
};

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_coverage(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rendezvous::cli
