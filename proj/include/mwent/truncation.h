#pragma once

#include <functional>
#include <vector>

namespace mwent {

/// Probability weight of the centre-of-mass levels above `nmax` in the
/// untruncated state: tanh(r)^(2(nmax+1)).
double tail_weight(double r, int nmax);

/// Trace-distance bound between the exact and the renormalised truncated state
/// (and hence between any of their marginals): 2*sqrt(tail) + tail.
double trace_distance_bound(double tail);

/// Error estimate attached to a purity computed at a truncation level:
/// 2*tail plus the observed convergence gap.
double purity_error_estimate(double tail, double convergence_gap);

struct TruncationBudget {
    double target_error = 1e-3;  ///< absolute error allowed on purities
    int nmax_cap = 64;

    void validate() const;
};

struct NmaxSelection {
    int nmax = 0;
    double achieved_tail = 0.0;
    /// max over splits of |P(nmax) - P(nmax-1)| at the accepted level.
    double convergence_gap = 0.0;
};

/// Purities of every split of interest at a given truncation level.
using PurityProbe = std::function<std::vector<double>(int nmax)>;

/// Smallest nmax <= cap with tail_weight(r, nmax) <= target/4 and every probed
/// purity moving by less than target/4 between nmax-1 and nmax.
/// r == 0 always yields 0. Throws BudgetInfeasible when the cap is reached.
NmaxSelection select_nmax(double r, const TruncationBudget &budget, const PurityProbe &probe);

/// select_nmax for the centre-of-mass state of two N-atom traps, probing every
/// exchange-symmetry class of splits.
NmaxSelection select_nmax(double r, int atoms_per_trap, const TruncationBudget &budget);

/// max over splits of |P(nmax + step) - P(nmax)|.
double convergence_gap(const PurityProbe &probe, int nmax, int step = 4);

}  // namespace mwent
