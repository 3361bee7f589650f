#include "mwent/measures.h"

#include <algorithm>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "mwent/errors.h"
#include "mwent/truncation.h"

namespace mwent {

std::vector<SplitSpec> MeasureReport::offending_splits() const {
    std::vector<SplitSpec> out;
    for (const auto &rec : per_split) {
        if (!(rec.purity < 1.0 - tolerance)) out.push_back(rec.split);
    }
    return out;
}

double default_tolerance(double truncation_error) { return std::max(1e-9, 4.0 * truncation_error); }

double state_truncation_error(const PureState &state) { return purity_error_estimate(state.norm_deficit(), 0.0); }

MeasureReport check_definition_1(const PureState &state, const MeasureOptions &options) {
    if (state.mode_count() < 2) throw DomainError("M-way entanglement needs at least two subsystems");
    MeasureReport report;
    report.truncation_error = state_truncation_error(state);
    report.tolerance = options.tolerance.value_or(default_tolerance(report.truncation_error));
    if (!(report.tolerance > 0.0)) throw DomainError("tolerance must be positive");
    report.bound_constant = options.bound_constant;

    bool all_entropies = true;
    double min_entropy = std::numeric_limits<double>::infinity();
    double min_bound = std::numeric_limits<double>::infinity();
    report.is_m_way_entangled = true;
    for (auto &split : enumerate_splits(state.mode_register(), options.use_symmetry)) {
        SplitRecord rec{split, purity(state, split), 0.0, std::nullopt};
        rec.linear_entropy = 1.0 - rec.purity;
        if (options.with_entropies) {
            try {
                rec.entropy = entanglement_entropy(state, split);
            } catch (const CapacityError &) {
                rec.entropy.reset();
            }
        }
        if (rec.entropy) {
            min_entropy = std::min(min_entropy, *rec.entropy);
        } else {
            all_entropies = false;
        }
        min_bound = std::min(min_bound, entropy_lower_bound(rec.linear_entropy, options.bound_constant));
        if (!(rec.purity < 1.0 - report.tolerance)) report.is_m_way_entangled = false;
        report.per_split.push_back(std::move(rec));
    }
    if (all_entropies) report.s_all_min = min_entropy;
    report.e_mbe_lower_bound = std::max(0.0, min_bound);
    return report;
}

double e_mbe_exact(const PureState &state, bool use_symmetry) {
    if (state.mode_count() < 2) throw DomainError("E_MBE needs at least two subsystems");
    double best = std::numeric_limits<double>::infinity();
    for (const auto &split : enumerate_splits(state.mode_register(), use_symmetry)) {
        best = std::min(best, entanglement_entropy(state, split));
    }
    return best;
}

double e_mbe_lower_bound(const PureState &state, BoundConstant constant, bool use_symmetry) {
    if (state.mode_count() < 2) throw DomainError("E_MBE needs at least two subsystems");
    double best = std::numeric_limits<double>::infinity();
    for (const auto &split : enumerate_splits(state.mode_register(), use_symmetry)) {
        best = std::min(best, entropy_lower_bound(linear_entropy(state, split), constant));
    }
    return std::max(0.0, best);
}

double npt_min_eigenvalue(const DensityOperator &rho, std::span<const std::size_t> transpose_modes) {
    const std::size_t modes = rho.mode_count();
    std::vector<bool> transposed(modes, false);
    for (auto m : transpose_modes) {
        if (m >= modes) throw DomainError(fmt::format("mode {} outside a {}-mode density operator", m + 1, modes));
        transposed[m] = true;
    }
    const auto count = static_cast<std::size_t>(std::ranges::count(transposed, true));
    if (count == 0 || count == modes) throw DomainError("partial transpose needs a proper, non-empty mode subset");

    // Product basis (kept part) x (transposed part) covering every basis vector of rho.
    std::map<std::vector<count_t>, std::size_t> a_parts;
    std::map<std::vector<count_t>, std::size_t> b_parts;
    std::vector<std::pair<std::vector<count_t>, std::vector<count_t>>> parts;
    parts.reserve(rho.dimension());
    for (const auto &v : rho.basis()) {
        std::vector<count_t> a;
        std::vector<count_t> b;
        for (std::size_t m = 0; m < modes; ++m) (transposed[m] ? b : a).push_back(v[m]);
        a_parts.emplace(a, 0);
        b_parts.emplace(b, 0);
        parts.emplace_back(std::move(a), std::move(b));
    }
    std::size_t next = 0;
    for (auto &[key, id] : a_parts) id = next++;
    next = 0;
    for (auto &[key, id] : b_parts) id = next++;
    const std::size_t nb = b_parts.size();
    const std::size_t dim = a_parts.size() * nb;
    if (dim > kEigenDimensionGuard) {
        throw CapacityError(fmt::format("partial transpose of dimension {} exceeds the eigensolver guard {}", dim,
                                        kEigenDimensionGuard),
                            dim, kEigenDimensionGuard);
    }

    std::vector<std::size_t> a_id(rho.dimension());
    std::vector<std::size_t> b_id(rho.dimension());
    for (std::size_t i = 0; i < rho.dimension(); ++i) {
        a_id[i] = a_parts.at(parts[i].first);
        b_id[i] = b_parts.at(parts[i].second);
    }
    // rho^{T_B}[(a, b), (a', b')] = rho[(a, b'), (a', b)]
    Eigen::MatrixXcd pt = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const auto &m = rho.matrix();
    for (std::size_t i = 0; i < rho.dimension(); ++i) {
        for (std::size_t j = 0; j < rho.dimension(); ++j) {
            const auto row = static_cast<Eigen::Index>(a_id[i] * nb + b_id[j]);
            const auto col = static_cast<Eigen::Index>(a_id[j] * nb + b_id[i]);
            pt(row, col) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace mwent
