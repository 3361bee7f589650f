#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "mwent/sweep.h"

namespace mwent::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kBudgetInfeasible = 2,
    kIoFailure = 3,
    kParseFailure = 4,
    kValidationFailure = 5,
};

/// Largest atoms-per-trap accepted without `allow_large_n`.
inline constexpr int kDefaultMaxAtoms = 6;

struct SweepCommand {
    SweepConfig config;
    OutputFormat format = OutputFormat::csv;
    std::string out_path;  ///< empty: write to `out`
    bool allow_large_n = false;
    bool timestamp = true;  ///< first CSV line carries the generation time
};

struct MeasureCommand {
    std::string state_path;
    std::optional<double> tolerance;
    OutputFormat format = OutputFormat::csv;  ///< csv selects the plain-text table
    BoundConstant bound_constant = BoundConstant::paper;
};

int cmd_sweep(const SweepCommand &command, std::ostream &out, std::ostream &err);
int cmd_measure(const MeasureCommand &command, std::ostream &out, std::ostream &err);
int cmd_plotscript(const std::string &results_path, const std::string &out_path, std::ostream &out, std::ostream &err);

}  // namespace mwent::cli
