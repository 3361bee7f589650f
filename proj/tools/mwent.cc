// mwent: multipartite entanglement of the two-trap centre-of-mass state.

#include <cmath>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mwent/cli.h"
#include "mwent/errors.h"
#include "mwent/state_io.h"
#include "mwent/states.h"

namespace {

constexpr const char *kSweepFooter = R"(CSV columns (fixed order):
  r                  squeezing parameter
  n_atoms            atoms per trap N (the state spans 2N atoms)
  nmax               centre-of-mass truncation level used
  tail               tanh(r)^(2(nmax+1)), weight of the discarded levels
  split_class        ';'-separated split labels: T<t>V<v> (traced atoms per
                     trap) with symmetry, a<i>/b<j> atom lists without
  purity             ';'-separated Tr(rho^2) per split, same order
  s_l_min            smallest linear entropy over the splits
  e_mbe_lower_bound  s_l_min / log2(e) (--bound paper) or * log2(e) (tight)
  truncation_error   error estimate (2*tail + convergence_gap) on the purities,
                     scaled up by log2(e) under --bound tight
  convergence_gap    max |purity(nmax+4) - purity(nmax)|
Reals carry 12 significant digits. The first line is a '# ...' timestamp comment.
JSON output holds one object per row with the same keys.

Exit codes: 0 success, 2 budget infeasible, 3 I/O, 4 parse, 5 validation.)";

std::vector<double> r_grid(double lo, double hi, double step) {
    if (!(step > 0.0)) throw mwent::DomainError("--r-step must be positive");
    std::vector<double> r;
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= count; ++k) r.push_back(lo + static_cast<double>(k) * step);
    return r;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multipartite entanglement of truncated bosonic pure states"};
    app.require_subcommand(1);

    const std::map<std::string, mwent::BoundConstant> bounds{{"paper", mwent::BoundConstant::paper},
                                                             {"tight", mwent::BoundConstant::tight}};
    const std::map<std::string, mwent::OutputFormat> formats{{"csv", mwent::OutputFormat::csv},
                                                             {"json", mwent::OutputFormat::json}};

    // sweep
    mwent::cli::SweepCommand sweep;
    double r_min = 0.0;
    double r_max = 1.5;
    double r_step = 0.1;
    std::vector<double> r_list;
    bool no_symmetry = false;
    int nmax = -1;
    sweep.config.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    auto *sweep_cmd = app.add_subcommand("sweep", "Lower bounds on E_MBE of |psi_CM> over a grid of r");
    sweep_cmd->footer(kSweepFooter);
    sweep_cmd->add_option("--n-atoms", sweep.config.atoms_per_trap, "Atoms per trap (one or more)")
        ->default_str("2");
    auto *rmin_opt = sweep_cmd->add_option("--r-min", r_min, "First r of the grid")->capture_default_str();
    auto *rmax_opt = sweep_cmd->add_option("--r-max", r_max, "Last r of the grid")->capture_default_str();
    auto *rstep_opt = sweep_cmd->add_option("--r-step", r_step, "Grid spacing")->capture_default_str();
    auto *rlist_opt = sweep_cmd->add_option("--r-list", r_list, "Explicit, strictly increasing r values");
    rlist_opt->excludes(rmin_opt)->excludes(rmax_opt)->excludes(rstep_opt);
    sweep_cmd->add_option("--target-error", sweep.config.target_error, "Allowed purity error per point")
        ->capture_default_str();
    sweep_cmd->add_option("--bound", sweep.config.bound_constant, "Linear-entropy bound constant")
        ->transform(CLI::CheckedTransformer(bounds, CLI::ignore_case))
        ->default_str("paper");
    sweep_cmd->add_option("--format", sweep.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->default_str("csv");
    sweep_cmd->add_option("--out", sweep.out_path, "Output file (default: stdout)");
    sweep_cmd->add_flag("--no-symmetry", no_symmetry, "Evaluate every subset split on the expanded state");
    sweep_cmd->add_option("--threads", sweep.config.threads, "Worker threads over (N, r) points")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--nmax", nmax, "Fixed truncation level (skips automatic selection)")
        ->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--nmax-cap", sweep.config.nmax_cap, "Ceiling for automatic selection")
        ->capture_default_str();
    sweep_cmd->add_flag("--allow-large-n", sweep.allow_large_n, "Permit more than 6 atoms per trap");
    bool no_timestamp = false;
    sweep_cmd->add_flag("--no-timestamp", no_timestamp, "Omit the timestamp comment line");

    // measure
    mwent::cli::MeasureCommand measure;
    auto *measure_cmd = app.add_subcommand("measure", "M-way entanglement test and E_MBE of a state file");
    measure_cmd->add_option("state", measure.state_path, "State file")->required();
    measure_cmd->add_option("--tolerance", measure.tolerance, "Purity gap demanded below 1");
    measure_cmd->add_option("--bound", measure.bound_constant, "Linear-entropy bound constant")
        ->transform(CLI::CheckedTransformer(bounds, CLI::ignore_case))
        ->default_str("paper");
    measure_cmd->add_option("--format", measure.format, "Output format (csv prints a text table)")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->default_str("csv");

    // plotscript
    std::string results_path;
    std::string script_path;
    auto *plot_cmd = app.add_subcommand("plotscript", "Write a matplotlib script for a sweep CSV");
    plot_cmd->add_option("results", results_path, "CSV written by `sweep`")->required();
    plot_cmd->add_option("--out", script_path, "Script file (default: stdout)");

    // state
    std::string kind;
    mwent::SqueezedPairSpec psi_spec{0.5, 2, 8};
    int parties = 3;
    double weight = 0.5;
    std::string state_out;
    auto *state_cmd = app.add_subcommand("state", "Write a state file (psi-cm or ghz)");
    state_cmd->add_option("kind", kind, "psi-cm | ghz")->required()->check(CLI::IsMember({"psi-cm", "ghz"}));
    state_cmd->add_option("--r", psi_spec.r, "Squeezing parameter (psi-cm)")->capture_default_str();
    state_cmd->add_option("--n-atoms", psi_spec.atoms_per_trap, "Atoms per trap (psi-cm)")->capture_default_str();
    state_cmd->add_option("--nmax", psi_spec.nmax, "Truncation level (psi-cm)")->capture_default_str();
    state_cmd->add_option("--parties", parties, "Number of parties (ghz)")->capture_default_str();
    state_cmd->add_option("--c", weight, "Weight of |0...0> (ghz)")->capture_default_str();
    state_cmd->add_option("--out", state_out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? mwent::cli::kSuccess : mwent::cli::kUsage;
    }

    try {
        if (*sweep_cmd) {
            sweep.config.r_values = rlist_opt->count() > 0 ? r_list : r_grid(r_min, r_max, r_step);
            sweep.config.use_symmetry = !no_symmetry;
            sweep.timestamp = !no_timestamp;
            if (nmax >= 0) sweep.config.nmax_override = nmax;
            return mwent::cli::cmd_sweep(sweep, std::cout, std::cerr);
        }
        if (*measure_cmd) return mwent::cli::cmd_measure(measure, std::cout, std::cerr);
        if (*plot_cmd) return mwent::cli::cmd_plotscript(results_path, script_path, std::cout, std::cerr);
        if (*state_cmd) {
            const mwent::PureState state =
                kind == "ghz" ? mwent::build_generalized_ghz(parties, weight) : mwent::build_psi_cm(psi_spec);
            if (state_out.empty()) {
                mwent::write_state(std::cout, state);
            } else {
                mwent::write_state_file(state_out, state);
            }
            return mwent::cli::kSuccess;
        }
    } catch (const mwent::IoError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return mwent::cli::kIoFailure;
    } catch (const mwent::DomainError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return mwent::cli::kValidationFailure;
    }
    return mwent::cli::kUsage;
}
