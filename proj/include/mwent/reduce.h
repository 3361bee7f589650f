#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mwent/split.h"
#include "mwent/states.h"

namespace mwent {

/// Largest matrix handed to a dense Hermitian eigensolver (or materialised as a
/// reduced density matrix).
inline constexpr std::size_t kEigenDimensionGuard = 4096;
/// Largest Gram block accumulated by the purity path.
inline constexpr std::size_t kGramDimensionGuard = 16384;
/// Eigenvalues at or below this are dropped from entropy sums (0 log 0 := 0).
inline constexpr double kEigenvalueFloor = 1e-12;

/// Which inequality turns a linear entropy into a von Neumann entropy (bits) lower bound.
enum class BoundConstant {
    paper,  ///< S_L / log2(e)
    tight,  ///< S_L * log2(e)
};

/// Hermitian, unit-trace, positive semidefinite matrix over an explicit ordered
/// list of basis vectors.
class DensityOperator {
   public:
    /// Throws DomainError when sizes disagree, the matrix is not Hermitian within
    /// 1e-12 entrywise, or the trace differs from 1 by more than 1e-10.
    DensityOperator(std::vector<OccupationVector> basis, Eigen::MatrixXcd matrix);

    /// |psi><psi| over the support of `state`.
    static DensityOperator projector(const PureState &state);

    const std::vector<OccupationVector> &basis() const noexcept { return basis_; }
    const Eigen::MatrixXcd &matrix() const noexcept { return matrix_; }
    std::size_t dimension() const noexcept { return basis_.size(); }
    std::size_t mode_count() const noexcept { return basis_.empty() ? 0 : basis_.front().size(); }

    double trace() const { return matrix_.trace().real(); }
    /// Tr(rho^2)
    double purity() const { return matrix_.squaredNorm(); }

    /// Ascending eigenvalues. Throws CapacityError above kEigenDimensionGuard.
    Eigen::VectorXd eigenvalues() const;

   private:
    std::vector<OccupationVector> basis_;
    Eigen::MatrixXcd matrix_;
};

/// Reduced state on the kept modes, over the kept-mode occupations that occur
/// in the support of `state`. Throws CapacityError above kEigenDimensionGuard.
DensityOperator partial_trace(const PureState &state, const SplitSpec &split);

/// Tr(rho_Q^2) for the marginal left after tracing the split's traced modes.
///
/// Works from the sparse amplitude matrix A (traced keys x kept keys): the
/// support is cut into connected blocks, each block's Gram matrix is built on
/// its smaller side, and the squared Frobenius norms are summed. Both marginals
/// of a pure state share their non-zero spectrum, so this is also Tr(rho_kept^2).
double purity(const PureState &state, const SplitSpec &split);

/// 1 - purity
double linear_entropy(const PureState &state, const SplitSpec &split);

/// Non-zero spectrum of the split's marginals, one Gram block at a time.
/// Throws CapacityError when a block exceeds kEigenDimensionGuard.
std::vector<double> reduced_spectrum(const PureState &state, const SplitSpec &split);

/// -Tr(rho log2 rho). Throws CapacityError above kEigenDimensionGuard and
/// DomainError if rho has an eigenvalue below -1e-10.
double von_neumann_entropy(const DensityOperator &rho);

/// -sum p log2 p over entries above kEigenvalueFloor.
double spectrum_entropy(std::span<const double> eigenvalues);

/// Entropy of entanglement across the split, in bits.
double entanglement_entropy(const PureState &state, const SplitSpec &split);

/// Lower bound on the von Neumann entropy (bits) implied by a linear entropy.
double entropy_lower_bound(double linear_entropy, BoundConstant constant);

}  // namespace mwent
