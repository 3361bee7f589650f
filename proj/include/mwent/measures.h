#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mwent/reduce.h"
#include "mwent/split.h"
#include "mwent/states.h"

namespace mwent {

struct SplitRecord {
    SplitSpec split;
    double purity = 1.0;
    double linear_entropy = 0.0;
    std::optional<double> entropy;  ///< bits; absent when the block was too large
};

/// Per-split purities and entropies of one pure state, with the verdicts drawn from them.
struct MeasureReport {
    std::vector<SplitRecord> per_split;
    /// min over splits of the von Neumann entropy; set only when every entropy was computed.
    std::optional<double> s_all_min;
    double e_mbe_lower_bound = 0.0;
    BoundConstant bound_constant = BoundConstant::paper;
    bool is_m_way_entangled = false;
    double tolerance = 0.0;
    double truncation_error = 0.0;

    /// Splits whose purity is not below 1 - tolerance.
    std::vector<SplitSpec> offending_splits() const;
};

struct MeasureOptions {
    /// Defaults to default_tolerance(truncation error of the state).
    std::optional<double> tolerance;
    /// Use (T, V) class representatives; valid only for exchange-symmetric two-trap states.
    bool use_symmetry = false;
    BoundConstant bound_constant = BoundConstant::paper;
    /// Also diagonalise each split's reduced state when it fits the eigensolver guard.
    bool with_entropies = false;
};

/// max(1e-9, 4 * truncation_error)
double default_tolerance(double truncation_error);

/// Purity error attributed to a state's discarded tail (0 for exact states).
double state_truncation_error(const PureState &state);

/// The state is M-way entangled iff every split's marginal has purity < 1 - tolerance.
/// Throws DomainError for a single-mode register or a non-positive tolerance.
MeasureReport check_definition_1(const PureState &state, const MeasureOptions &options = {});

/// Minimum entanglement entropy (bits) over all splits. Throws CapacityError
/// when a reduced block exceeds the eigensolver guard.
double e_mbe_exact(const PureState &state, bool use_symmetry = false);

/// Minimum over splits of the linear-entropy lower bound on the entanglement entropy.
double e_mbe_lower_bound(const PureState &state, BoundConstant constant = BoundConstant::paper,
                         bool use_symmetry = false);

/// Smallest eigenvalue of the partial transpose of `rho` over `transpose_modes`
/// (indices into rho's modes). A negative value certifies entanglement across
/// that cut; a non-negative one proves nothing.
double npt_min_eigenvalue(const DensityOperator &rho, std::span<const std::size_t> transpose_modes);

}  // namespace mwent
