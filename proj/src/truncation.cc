#include "mwent/truncation.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mwent/com_reduction.h"
#include "mwent/errors.h"
#include "mwent/split.h"

namespace mwent {

double tail_weight(double r, int nmax) {
    if (!(r >= 0.0) || nmax < 0) throw DomainError("tail_weight needs r >= 0 and nmax >= 0");
    return std::pow(std::tanh(r), 2.0 * (nmax + 1));
}

double trace_distance_bound(double tail) { return 2.0 * std::sqrt(tail) + tail; }

double purity_error_estimate(double tail, double convergence_gap) { return 2.0 * tail + convergence_gap; }

void TruncationBudget::validate() const {
    if (!(target_error > 0.0)) throw DomainError("target error must be positive");
    if (nmax_cap < 0) throw DomainError("nmax cap must be non-negative");
}

namespace {

double max_abs_difference(const std::vector<double> &a, const std::vector<double> &b) {
    double gap = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
    return gap;
}

}  // namespace

NmaxSelection select_nmax(double r, const TruncationBudget &budget, const PurityProbe &probe) {
    budget.validate();
    if (!(r >= 0.0)) throw DomainError("r must be non-negative");
    if (r == 0.0) return {0, 0.0, 0.0};

    const double quarter = budget.target_error / 4.0;
    std::vector<double> previous = probe(0);
    for (int nmax = 1; nmax <= budget.nmax_cap; ++nmax) {
        const double tail = tail_weight(r, nmax);
        if (tail > quarter) {
            // Purities are only compared once the tail criterion holds.
            if (tail_weight(r, nmax + 1) <= quarter) previous = probe(nmax);
            continue;
        }
        std::vector<double> current = probe(nmax);
        const double gap = max_abs_difference(current, previous);
        if (gap < quarter) return {nmax, tail, gap};
        previous = std::move(current);
    }
    throw BudgetInfeasible(fmt::format("r = {}: no nmax <= {} reaches target error {}", r, budget.nmax_cap,
                                       budget.target_error),
                           r);
}

NmaxSelection select_nmax(double r, int atoms_per_trap, const TruncationBudget &budget) {
    const auto classes = symmetry_classes(atoms_per_trap);
    return select_nmax(r, budget, [&](int nmax) {
        std::vector<double> out;
        out.reserve(classes.size());
        for (const auto &cut : classes) out.push_back(com_purity({r, atoms_per_trap, nmax}, cut));
        return out;
    });
}

double convergence_gap(const PurityProbe &probe, int nmax, int step) {
    return max_abs_difference(probe(nmax + step), probe(nmax));
}

}  // namespace mwent
