#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mwent/split.h"
#include "mwent/states.h"

namespace mwent {

// Reduced states of |psi_CM> without expanding it over individual atoms.
//
// Tracing T of the N atoms in a trap splits that trap's centre-of-mass mode
// like a beam splitter with transmissivity p = T/N:
//
//   |K>_com = sum_a sqrt(C(K,a) p^a (1-p)^(K-a)) |a>_traced-com |K-a>_kept-com
//
// while every other collective mode stays in vacuum. The marginal spectrum of a
// (T, V) split is therefore that of a four-mode state on the traced and kept
// centre-of-mass modes of both traps. Its amplitude matrix is block diagonal in
// delta = a1 - a2 (traced side) = b2 - b1 (kept side), with
//
//   M_delta(a1, b1) = w_K * beta(K, a1; T/N) * beta(K, a1 - delta; V/N),  K = a1 + b1.
//
// Results are identical to running the generic sparse path on build_psi_cm(spec)
// with SplitSpec::from_cut, at a cost polynomial in nmax and independent of N.

/// Beam-splitter amplitude sqrt(C(level, a) p^a (1-p)^(level-a)).
double split_amplitude(int level, int a, double p);

/// Gram matrices M_delta M_delta^T of every non-empty delta block.
std::vector<Eigen::MatrixXd> com_gram_blocks(const SqueezedPairSpec &spec, TrapCut cut);

/// Tr(rho_Q^2) of the (T, V) split of the truncated |psi_CM>.
double com_purity(const SqueezedPairSpec &spec, TrapCut cut);

/// Non-zero marginal spectrum of the (T, V) split, descending.
std::vector<double> com_spectrum(const SqueezedPairSpec &spec, TrapCut cut);

}  // namespace mwent
