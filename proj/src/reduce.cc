#include "mwent/reduce.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "mwent/errors.h"

namespace mwent {

namespace {

using Index = std::uint32_t;

/// Row/column labels of the amplitude matrix A(traced key, kept key).
struct SplitIndex {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Index> row;  // per term
    std::vector<Index> col;  // per term
    std::vector<count_t> col_keys;
    std::size_t kept_width = 0;
};

/// Assign dense ids (in lexicographic key order) to the projections of every
/// term onto `modes`.
std::size_t intern_subkeys(const PureState &state, const std::vector<std::size_t> &modes, std::vector<Index> &ids,
                           std::vector<count_t> *distinct_keys) {
    const std::size_t n = state.term_count();
    const std::size_t w = modes.size();
    std::vector<count_t> keys(n * w);
    for (std::size_t i = 0; i < n; ++i) {
        auto occ = state.occupation(i);
        for (std::size_t k = 0; k < w; ++k) keys[i * w + k] = occ[modes[k]];
    }
    auto key = [&](std::size_t i) { return std::span<const count_t>{keys.data() + i * w, w}; };
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    std::ranges::sort(order, [&](Index a, Index b) {
        auto ka = key(a);
        auto kb = key(b);
        return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
    });
    ids.assign(n, 0);
    std::size_t next = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0 && !std::ranges::equal(key(order[k]), key(order[k - 1]))) ++next;
        ids[order[k]] = static_cast<Index>(next);
        if (distinct_keys && (k == 0 || ids[order[k]] != ids[order[k - 1]])) {
            auto kk = key(order[k]);
            distinct_keys->insert(distinct_keys->end(), kk.begin(), kk.end());
        }
    }
    return n == 0 ? 0 : next + 1;
}

SplitIndex index_split(const PureState &state, const SplitSpec &split, bool want_col_keys) {
    if (split.mode_count() != state.mode_count()) {
        throw DomainError(fmt::format("split is for {} modes, state has {}", split.mode_count(), state.mode_count()));
    }
    std::vector<std::size_t> traced(split.traced_modes().begin(), split.traced_modes().end());
    std::vector<std::size_t> kept = split.kept_modes();
    SplitIndex index;
    index.rows = intern_subkeys(state, traced, index.row, nullptr);
    index.cols = intern_subkeys(state, kept, index.col, want_col_keys ? &index.col_keys : nullptr);
    index.kept_width = kept.size();
    return index;
}

class DisjointSets {
   public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Index{0}); }
    Index find(Index x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(Index a, Index b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);
        parent_[a] = b;
    }

   private:
    std::vector<Index> parent_;
};

/// Calls `visit(G)` for the Gram matrix of every connected block of A, built on
/// the block's smaller side. Only the lower triangle of G is filled.
template <typename Scalar, typename Visit>
void for_each_gram_block(const PureState &state, const SplitIndex &index, Visit &&visit) {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const std::size_t n = state.term_count();
    if (n == 0) return;

    DisjointSets sets(index.rows + index.cols);
    for (std::size_t i = 0; i < n; ++i) sets.unite(index.row[i], static_cast<Index>(index.rows + index.col[i]));

    // Bucket terms by block, ordered by root.
    std::vector<Index> root(n);
    for (std::size_t i = 0; i < n; ++i) root[i] = sets.find(index.row[i]);
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    std::ranges::stable_sort(order, [&](Index a, Index b) { return root[a] < root[b]; });

    std::vector<Index> local_row(index.rows, 0);
    std::vector<Index> local_col(index.cols, 0);
    std::vector<Index> block;
    std::size_t begin = 0;
    while (begin < n) {
        std::size_t end = begin;
        while (end < n && root[order[end]] == root[order[begin]]) ++end;
        block.assign(order.begin() + static_cast<std::ptrdiff_t>(begin), order.begin() + static_cast<std::ptrdiff_t>(end));

        // Local ids in order of first appearance.
        std::size_t nr = 0;
        std::size_t nc = 0;
        for (Index t : block) {
            local_row[index.row[t]] = std::numeric_limits<Index>::max();
            local_col[index.col[t]] = std::numeric_limits<Index>::max();
        }
        for (Index t : block) {
            if (local_row[index.row[t]] == std::numeric_limits<Index>::max()) local_row[index.row[t]] = static_cast<Index>(nr++);
            if (local_col[index.col[t]] == std::numeric_limits<Index>::max()) local_col[index.col[t]] = static_cast<Index>(nc++);
        }
        const bool rows_side = nr <= nc;
        const std::size_t dim = rows_side ? nr : nc;
        if (dim > kGramDimensionGuard) {
            throw CapacityError(fmt::format("Gram block of dimension {} exceeds the guard {}", dim, kGramDimensionGuard),
                                dim, kGramDimensionGuard);
        }
        // Group by the summed-over side, then accumulate outer products.
        auto summed = [&](Index t) { return rows_side ? local_col[index.col[t]] : local_row[index.row[t]]; };
        auto kept = [&](Index t) { return rows_side ? local_row[index.row[t]] : local_col[index.col[t]]; };
        std::ranges::stable_sort(block, [&](Index a, Index b) { return summed(a) < summed(b); });

        Matrix gram = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        std::size_t g = 0;
        while (g < block.size()) {
            std::size_t h = g;
            while (h < block.size() && summed(block[h]) == summed(block[g])) ++h;
            for (std::size_t a = g; a < h; ++a) {
                const Index ia = kept(block[a]);
                Scalar va;
                if constexpr (std::is_same_v<Scalar, double>) {
                    va = state.amplitude(block[a]).real();
                } else {
                    va = state.amplitude(block[a]);
                }
                for (std::size_t b = g; b <= a; ++b) {
                    const Index ib = kept(block[b]);
                    Scalar vb;
                    if constexpr (std::is_same_v<Scalar, double>) {
                        vb = state.amplitude(block[b]).real();
                    } else {
                        vb = state.amplitude(block[b]);
                    }
                    // G(i, j) = sum_k A(i, k) conj(A(j, k)); store the lower triangle.
                    if (ia >= ib) {
                        if constexpr (std::is_same_v<Scalar, double>) {
                            gram(ia, ib) += va * vb;
                        } else {
                            gram(ia, ib) += va * std::conj(vb);
                        }
                    } else {
                        if constexpr (std::is_same_v<Scalar, double>) {
                            gram(ib, ia) += vb * va;
                        } else {
                            gram(ib, ia) += vb * std::conj(va);
                        }
                    }
                }
            }
            g = h;
        }
        visit(gram);
        begin = end;
    }
}

template <typename Matrix>
double lower_triangle_frobenius_sq(const Matrix &lower) {
    double diag = 0.0;
    double off = 0.0;
    const Eigen::Index d = lower.rows();
    for (Eigen::Index j = 0; j < d; ++j) {
        diag += std::norm(lower(j, j));
        for (Eigen::Index i = j + 1; i < d; ++i) off += std::norm(lower(i, j));
    }
    return diag + 2.0 * off;
}

template <typename Matrix>
void append_eigenvalues(const Matrix &lower, std::vector<double> &out) {
    const auto d = static_cast<std::size_t>(lower.rows());
    if (d > kEigenDimensionGuard) {
        throw CapacityError(fmt::format("reduced-state block of dimension {} exceeds the eigensolver guard {}; "
                                        "use the linear-entropy bound instead",
                                        d, kEigenDimensionGuard),
                            d, kEigenDimensionGuard);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(lower, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i));
}

}  // namespace

DensityOperator::DensityOperator(std::vector<OccupationVector> basis, Eigen::MatrixXcd matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(basis_.size());
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw DomainError(fmt::format("density matrix is {}x{} but the basis has {} vectors", matrix_.rows(),
                                      matrix_.cols(), d));
    }
    if (d == 0) throw DomainError("density operator over an empty basis");
    for (const auto &b : basis_) {
        if (b.size() != basis_.front().size()) throw DomainError("basis vectors of differing length");
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            if (std::abs(matrix_(i, j) - std::conj(matrix_(j, i))) > 1e-12) {
                throw DomainError(fmt::format("density matrix is not Hermitian at ({}, {})", i, j));
            }
        }
    }
    if (std::abs(matrix_.trace() - std::complex<double>(1.0, 0.0)) > 1e-10) {
        throw DomainError(fmt::format("density matrix trace {} differs from 1", matrix_.trace().real()));
    }
}

DensityOperator DensityOperator::projector(const PureState &state) {
    const auto d = static_cast<Eigen::Index>(state.term_count());
    if (state.term_count() > kEigenDimensionGuard) {
        throw CapacityError("projector dimension exceeds the dense guard", state.term_count(), kEigenDimensionGuard);
    }
    Eigen::VectorXcd psi(d);
    std::vector<OccupationVector> basis;
    basis.reserve(state.term_count());
    for (Eigen::Index i = 0; i < d; ++i) {
        psi(i) = state.amplitude(static_cast<std::size_t>(i));
        basis.emplace_back(state.occupation(static_cast<std::size_t>(i)));
    }
    return DensityOperator(std::move(basis), psi * psi.adjoint());
}

Eigen::VectorXd DensityOperator::eigenvalues() const {
    if (dimension() > kEigenDimensionGuard) {
        throw CapacityError(fmt::format("density matrix of dimension {} exceeds the eigensolver guard {}; "
                                        "use the linear-entropy bound instead",
                                        dimension(), kEigenDimensionGuard),
                            dimension(), kEigenDimensionGuard);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

DensityOperator partial_trace(const PureState &state, const SplitSpec &split) {
    SplitIndex index = index_split(state, split, true);
    if (index.cols > kEigenDimensionGuard) {
        throw CapacityError(fmt::format("reduced state of dimension {} exceeds the dense guard {}", index.cols,
                                        kEigenDimensionGuard),
                            index.cols, kEigenDimensionGuard);
    }
    const auto d = static_cast<Eigen::Index>(index.cols);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);

    std::vector<Index> order(state.term_count());
    std::iota(order.begin(), order.end(), Index{0});
    std::ranges::stable_sort(order, [&](Index a, Index b) { return index.row[a] < index.row[b]; });
    std::size_t g = 0;
    while (g < order.size()) {
        std::size_t h = g;
        while (h < order.size() && index.row[order[h]] == index.row[order[g]]) ++h;
        for (std::size_t a = g; a < h; ++a) {
            for (std::size_t b = g; b < h; ++b) {
                rho(index.col[order[a]], index.col[order[b]]) +=
                    state.amplitude(order[a]) * std::conj(state.amplitude(order[b]));
            }
        }
        g = h;
    }

    std::vector<OccupationVector> basis;
    basis.reserve(index.cols);
    for (std::size_t c = 0; c < index.cols; ++c) {
        basis.emplace_back(std::span<const count_t>{index.col_keys.data() + c * index.kept_width, index.kept_width});
    }
    return DensityOperator(std::move(basis), std::move(rho));
}

double purity(const PureState &state, const SplitSpec &split) {
    SplitIndex index = index_split(state, split, false);
    double total = 0.0;
    if (state.is_real()) {
        for_each_gram_block<double>(state, index, [&](const Eigen::MatrixXd &g) { total += lower_triangle_frobenius_sq(g); });
    } else {
        for_each_gram_block<std::complex<double>>(
            state, index, [&](const Eigen::MatrixXcd &g) { total += lower_triangle_frobenius_sq(g); });
    }
    // Rounding can lift a pure marginal a few ulps above 1.
    return std::min(total, 1.0);
}

double linear_entropy(const PureState &state, const SplitSpec &split) { return 1.0 - purity(state, split); }

std::vector<double> reduced_spectrum(const PureState &state, const SplitSpec &split) {
    SplitIndex index = index_split(state, split, false);
    std::vector<double> eigenvalues;
    if (state.is_real()) {
        for_each_gram_block<double>(state, index, [&](const Eigen::MatrixXd &g) { append_eigenvalues(g, eigenvalues); });
    } else {
        for_each_gram_block<std::complex<double>>(
            state, index, [&](const Eigen::MatrixXcd &g) { append_eigenvalues(g, eigenvalues); });
    }
    std::ranges::sort(eigenvalues, std::greater<>{});
    return eigenvalues;
}

double spectrum_entropy(std::span<const double> eigenvalues) {
    double s = 0.0;
    for (double p : eigenvalues) {
        if (p > kEigenvalueFloor) s -= p * std::log2(p);
    }
    return s;
}

double von_neumann_entropy(const DensityOperator &rho) {
    Eigen::VectorXd values = rho.eigenvalues();
    if (values.size() > 0 && values.minCoeff() < -1e-10) {
        throw DomainError(fmt::format("density operator has negative eigenvalue {}", values.minCoeff()));
    }
    return spectrum_entropy(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
}

double entanglement_entropy(const PureState &state, const SplitSpec &split) {
    auto spectrum = reduced_spectrum(state, split);
    return spectrum_entropy(spectrum);
}

double entropy_lower_bound(double linear_entropy, BoundConstant constant) {
    return constant == BoundConstant::paper ? linear_entropy / std::numbers::log2e : linear_entropy * std::numbers::log2e;
}

}  // namespace mwent
