#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mwent/reduce.h"

namespace mwent {

enum class OutputFormat { csv, json };

struct SweepConfig {
    std::vector<int> atoms_per_trap{2};
    std::vector<double> r_values;  ///< defaults to default_r_values() when empty
    double target_error = 1e-3;
    BoundConstant bound_constant = BoundConstant::paper;
    bool use_symmetry = true;
    int threads = 1;
    std::optional<int> nmax_override;
    int nmax_cap = 64;

    /// Throws DomainError for unsorted or negative r values, N < 1, or a
    /// non-positive target error.
    void validate() const;
};

/// r = 0.0, 0.1, ..., 1.5
std::vector<double> default_r_values();

/// One (N, r) point of a sweep.
struct SweepRow {
    double r = 0.0;
    int atoms_per_trap = 0;
    int nmax = 0;
    double tail = 0.0;
    std::vector<std::string> split_labels;
    std::vector<double> purities;
    double s_l_min = 0.0;
    double e_mbe_lower_bound = 0.0;
    double truncation_error = 0.0;  ///< error estimate on the purities and on e_mbe_lower_bound
    double convergence_gap = 0.0;  ///< max over classes of |P(nmax+4) - P(nmax)|
};

struct SweepResult {
    std::vector<SweepRow> rows;                       ///< sorted by (N, r)
    std::vector<std::pair<int, double>> infeasible;   ///< (N, r) points that missed the budget
};

/// Evaluate every (N, r) point. With symmetry each (T, V) class is evaluated
/// through the collective-mode reduction; without it, |psi_CM> is expanded over
/// individual atoms and every subset split goes through the generic sparse path.
SweepResult run_sweep(const SweepConfig &config);

/// Atom label of a subset split of a two-trap register: "a1a2b1" traces atoms
/// 1 and 2 of the first trap and atom 1 of the second.
std::string atom_label(std::size_t atoms_per_trap, const std::vector<std::size_t> &traced_modes);

/// "T2V1"
std::string cut_label(int traced_first, int traced_second);

inline constexpr const char *kCsvHeader =
    "r,n_atoms,nmax,tail,split_class,purity,s_l_min,e_mbe_lower_bound,truncation_error,convergence_gap";

/// Optional first line "# <comment>", then kCsvHeader, then one row per point.
/// split_class and purity hold ';'-separated lists in matching order; reals use
/// 12 significant digits.
void write_csv(std::ostream &out, const std::vector<SweepRow> &rows, const std::string &comment = {});
void write_json(std::ostream &out, const std::vector<SweepRow> &rows);

/// Parse write_csv output. Throws ParseError (with line number) on malformed
/// input, including a file with no data rows.
std::vector<SweepRow> read_sweep_csv(std::istream &in);

/// Standalone matplotlib script plotting e_mbe_lower_bound against r, one
/// linearly interpolated curve per N.
std::string make_plot_script(const std::vector<SweepRow> &rows);

}  // namespace mwent
