#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mwent/errors.h"
#include "mwent/reduce.h"
#include "mwent/split.h"
#include "mwent/states.h"
#include "mwent/truncation.h"
#include "oracles.h"

using namespace mwent;

namespace {

PureState psi4_1() { return build_generalized_ghz(4, 0.5); }

PureState psi4_2() {
    const PureState f[] = {basis_state(ModeRegister::flat(1, 1), OccupationVector{0}), build_generalized_ghz(3, 0.5)};
    return build_product(f);
}

PureState psi4_3() {
    const auto phi = build_generalized_ghz(2, 0.5);
    const PureState f[] = {phi, phi};
    return build_product(f);
}

}  // namespace

TEST(PartialTrace, GhzSingleMode) {
    const auto ghz = build_generalized_ghz(3, 0.5);
    for (std::size_t m = 0; m < 3; ++m) {
        const auto rho = partial_trace(ghz, SplitSpec(3, {m}));
        EXPECT_EQ(rho.dimension(), 2u);
        EXPECT_NEAR(std::abs(rho.matrix()(0, 0) - 0.5), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(rho.matrix()(1, 1) - 0.5), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(rho.matrix()(0, 1)), 0.0, 1e-15);
    }
}

TEST(PartialTrace, Psi4Examples) {
    const auto rho2 = partial_trace(psi4_2(), SplitSpec(4, {0}));
    EXPECT_NEAR(rho2.purity(), 1.0, 1e-15);
    EXPECT_NEAR(rho2.eigenvalues().maxCoeff(), 1.0, 1e-12);

    // Tracing modes 1 and 2 of |phi+>|phi+> leaves |phi+> on modes 3 and 4.
    const auto rho3 = partial_trace(psi4_3(), SplitSpec(4, {0, 1}));
    ASSERT_EQ(rho3.dimension(), 2u);
    EXPECT_EQ(rho3.basis()[0], (OccupationVector{0, 0}));
    EXPECT_EQ(rho3.basis()[1], (OccupationVector{1, 1}));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_NEAR(rho3.matrix()(i, j).real(), 0.5, 1e-15);
}

TEST(PartialTrace, ProductStateLeavesTheOtherFactor) {
    std::mt19937_64 rng(3);
    const auto a = oracle::random_state(rng, 2, 2, 5);
    const auto b = oracle::random_state(rng, 2, 2, 4);
    const PureState f[] = {a, b};
    const auto rho = partial_trace(build_product(f), SplitSpec(4, {0, 1}));
    EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
    for (std::size_t i = 0; i < rho.dimension(); ++i) {
        for (std::size_t j = 0; j < rho.dimension(); ++j) {
            const auto expected = b.amplitude_of(rho.basis()[i]) * std::conj(b.amplitude_of(rho.basis()[j]));
            EXPECT_NEAR(std::abs(rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - expected),
                        0.0, 1e-12);
        }
    }
}

TEST(PartialTrace, RejectsMismatchedSplit) { EXPECT_THROW(partial_trace(psi4_1(), SplitSpec(3, {0})), DomainError); }

TEST(Purity, Examples) {
    const auto ghz = build_generalized_ghz(3, 0.5);
    for (std::size_t m = 0; m < 3; ++m) EXPECT_NEAR(purity(ghz, SplitSpec(3, {m})), 0.5, 1e-15);
    EXPECT_NEAR(purity(psi4_2(), SplitSpec(4, {0})), 1.0, 1e-15);
    EXPECT_NEAR(purity(psi4_3(), SplitSpec(4, {0, 1})), 1.0, 1e-15);
    EXPECT_NEAR(purity(psi4_3(), SplitSpec(4, {0, 2})), 0.25, 1e-15);
}

TEST(Purity, ThermalMarginalOfPsiCm) {
    for (double r : {0.3, 0.7, 1.0}) {
        for (int n : {1, 2}) {
            const int nmax = select_nmax(r, n, TruncationBudget{1e-6, 200}).nmax;
            const auto s = build_psi_cm({r, n, nmax});
            std::vector<std::size_t> trap(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) trap[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
            EXPECT_NEAR(purity(s, SplitSpec(s.mode_count(), trap)), oracle::thermal_purity(r),
                        std::max(1e-9, 4 * s.norm_deficit()));
        }
    }
    const auto s = build_psi_cm({1.0, 1, 60});
    EXPECT_NEAR(purity(s, SplitSpec(2, {0})), 0.2658022288340798, 1e-9);
}

TEST(Purity, GramMatchesMaterialisedTrace) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> modes_dist(2, 6);
    std::uniform_int_distribution<int> cutoff_dist(1, 3);
    std::uniform_int_distribution<int> terms_dist(1, 40);
    for (int trial = 0; trial < 100; ++trial) {
        const int f = modes_dist(rng);
        const auto s = oracle::random_state(rng, f, cutoff_dist(rng), terms_dist(rng), trial % 3 == 0);
        for (const auto &split : enumerate_splits(s.mode_register(), false)) {
            const double gram = purity(s, split);
            EXPECT_NEAR(gram, partial_trace(s, split).purity(), 1e-10);
            const std::vector<std::size_t> traced(split.traced_modes().begin(), split.traced_modes().end());
            EXPECT_NEAR(gram, oracle::dense_purity(s, traced), 1e-10);
        }
    }
}

TEST(Purity, ComplementHasTheSamePurity) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto s = oracle::random_state(rng, 5, 2, 30);
        for (const auto &split : enumerate_splits(s.mode_register(), false)) {
            const double p = purity(s, split);
            EXPECT_NEAR(p, purity(s, split.complement()), 1e-12);
            EXPECT_GT(p, 0.0);
            EXPECT_LE(p, 1.0 + 1e-12);
            EXPECT_NEAR(linear_entropy(s, split), 1.0 - p, 1e-15);
        }
    }
}

TEST(Purity, SingleTermStateIsPure) {
    const auto s = basis_state(ModeRegister::flat(3, 2), OccupationVector{2, 0, 1});
    EXPECT_EQ(purity(s, SplitSpec(3, {1})), 1.0);
    EXPECT_EQ(linear_entropy(s, SplitSpec(3, {1})), 0.0);
}

TEST(LinearEntropy, PsiCmSingleAtomTraps) {
    const double lam = oracle::lambda(1.0);
    const auto s = build_psi_cm({1.0, 1, 80});
    EXPECT_NEAR(linear_entropy(s, SplitSpec(2, {0})), 2 * lam / (1 + lam), 1e-12);
    EXPECT_NEAR(linear_entropy(s, SplitSpec(2, {0})), 0.734198, 1e-6);
}

TEST(Entropy, Examples) {
    const auto ghz = build_generalized_ghz(3, 0.5);
    EXPECT_NEAR(entanglement_entropy(ghz, SplitSpec(3, {0})), 1.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(partial_trace(ghz, SplitSpec(3, {1}))), 1.0, 1e-12);
    EXPECT_NEAR(entanglement_entropy(psi4_2(), SplitSpec(4, {0})), 0.0, 1e-12);

    // Eigenvalues under the 1e-12 floor are dropped, hence 1e-10.
    for (double r : {0.3, 0.7, 1.0}) {
        for (int nmax : {5, 30}) {
            const auto s = build_psi_cm({r, 1, nmax});
            EXPECT_NEAR(entanglement_entropy(s, SplitSpec(2, {0})), oracle::truncated_thermal_entropy(r, nmax), 1e-10);
            EXPECT_NEAR(von_neumann_entropy(partial_trace(s, SplitSpec(2, {0}))),
                        oracle::truncated_thermal_entropy(r, nmax), 1e-10);
        }
    }
    EXPECT_NEAR(oracle::thermal_entropy(1.0), 2.336909300545897, 1e-12);
    // The closed form is approached as the tail vanishes.
    EXPECT_NEAR(entanglement_entropy(build_psi_cm({1.0, 1, 40}), SplitSpec(2, {0})), oracle::thermal_entropy(1.0), 1e-8);
    EXPECT_NEAR(entanglement_entropy(build_psi_cm({0.7, 1, 30}), SplitSpec(2, {0})), oracle::thermal_entropy(0.7), 1e-10);
}

TEST(Entropy, SpectrumMatchesDenseEigenvalues) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = oracle::random_state(rng, 4, 2, 25);
        for (const auto &split : enumerate_splits(s.mode_register(), false)) {
            const auto rho = partial_trace(s, split);
            EXPECT_NEAR(entanglement_entropy(s, split), von_neumann_entropy(rho), 1e-10);
            const auto spectrum = reduced_spectrum(s, split);
            double sum = 0.0;
            for (double p : spectrum) sum += p;
            EXPECT_NEAR(sum, 1.0, 1e-12);
        }
    }
}

TEST(Entropy, SpectrumEntropyIgnoresTinyEigenvalues) {
    const std::vector<double> p{0.5, 0.5, 1e-13, -1e-14};
    EXPECT_NEAR(spectrum_entropy(p), 1.0, 1e-15);
}

TEST(Entropy, LinearBoundHolds) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const auto s = oracle::random_state(rng, 4, 2, 20);
        for (const auto &split : enumerate_splits(s.mode_register(), false)) {
            const double sl = linear_entropy(s, split);
            const double entropy = entanglement_entropy(s, split);
            const double paper = entropy_lower_bound(sl, BoundConstant::paper);
            const double tight = entropy_lower_bound(sl, BoundConstant::tight);
            EXPECT_LE(paper, entropy + 1e-10);
            EXPECT_LE(tight, entropy + 1e-10);
            EXPECT_GE(tight, paper);
        }
    }
    EXPECT_NEAR(entropy_lower_bound(1.0, BoundConstant::paper), std::numbers::ln2, 1e-15);
    EXPECT_NEAR(entropy_lower_bound(0.5, BoundConstant::tight), 0.5 / std::numbers::ln2, 1e-15);
}

TEST(DensityOperator, Validation) {
    std::vector<OccupationVector> basis{OccupationVector{0}, OccupationVector{1}};
    Eigen::MatrixXcd m(2, 2);
    m << 0.5, std::complex<double>(0, 0.1), std::complex<double>(0, 0.1), 0.5;
    EXPECT_THROW(DensityOperator(basis, m), DomainError);
    m << 0.6, 0, 0, 0.6;
    EXPECT_THROW(DensityOperator(basis, m), DomainError);
    EXPECT_THROW(DensityOperator({OccupationVector{0}}, m), DomainError);
    m << 1.5, 0, 0, -0.5;
    EXPECT_THROW(von_neumann_entropy(DensityOperator(basis, m)), DomainError);
}

TEST(DensityOperator, EigenGuard) {
    // Uniform superposition over 5000 kept occupations entangled with one traced mode.
    const auto reg = ModeRegister::flat(2, 5000);
    std::vector<BasisTerm> terms;
    for (int k = 0; k < 5000; ++k) terms.push_back({OccupationVector{k % 2, k}, 1.0 / std::sqrt(5000.0)});
    const PureState s(reg, std::move(terms));
    EXPECT_THROW(partial_trace(s, SplitSpec(2, {0})), CapacityError);
    EXPECT_NEAR(purity(s, SplitSpec(2, {0})), 0.5, 1e-12);
    EXPECT_NEAR(entanglement_entropy(s, SplitSpec(2, {0})), 1.0, 1e-12);
}
