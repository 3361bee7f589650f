#include <gtest/gtest.h>

#include <cmath>

#include "mwent/errors.h"
#include "mwent/states.h"
#include "oracles.h"

using namespace mwent;

TEST(PsiCm, VacuumAtZeroSqueezing) {
    const auto s = build_psi_cm({0.0, 3, 5});
    ASSERT_EQ(s.term_count(), 1u);
    EXPECT_EQ(OccupationVector(s.occupation(0)), (OccupationVector{0, 0, 0, 0, 0, 0}));
    EXPECT_NEAR(std::abs(s.amplitude(0) - 1.0), 0.0, 1e-15);
    EXPECT_EQ(s.norm_deficit(), 0.0);
}

TEST(PsiCm, FirstLevelSupport) {
    const double r = 0.5;
    const auto s = build_psi_cm({r, 2, 1});
    ASSERT_EQ(s.term_count(), 5u);
    const double t = std::tanh(r);
    const double expected = t * 0.5 / std::cosh(r) / std::sqrt(1.0 - std::pow(t, 4));
    for (const auto &occ : {OccupationVector{1, 0, 1, 0}, OccupationVector{1, 0, 0, 1}, OccupationVector{0, 1, 1, 0},
                            OccupationVector{0, 1, 0, 1}}) {
        EXPECT_NEAR(s.amplitude_of(occ).real(), expected, 1e-15) << occ.to_string();
    }
    EXPECT_NEAR(s.norm_deficit(), std::pow(t, 4), 1e-16);
}

TEST(PsiCm, NormAndSupportSize) {
    const auto s = build_psi_cm({1.0, 2, 20});
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    std::size_t expected = 0;
    for (int k = 0; k <= 20; ++k) expected += static_cast<std::size_t>((k + 1) * (k + 1));
    EXPECT_EQ(s.term_count(), expected);
}

TEST(PsiCm, NormPlusDeficitIsOneBeforeRescaling) {
    for (double r : {0.3, 0.8, 1.4}) {
        const auto s = build_psi_cm({r, 2, 12});
        // Unrescaled weight is (1 - deficit); the rescaled norm is 1.
        EXPECT_NEAR(s.norm_squared() * (1.0 - s.norm_deficit()) + s.norm_deficit(), 1.0, 1e-12);
        EXPECT_NEAR(s.norm_deficit(), std::pow(std::tanh(r), 2 * 13), 1e-15);
    }
}

TEST(PsiCm, TrapTotalsMatch) {
    const auto s = build_psi_cm({0.9, 3, 6});
    for (std::size_t i = 0; i < s.term_count(); ++i) {
        const auto occ = s.occupation(i);
        EXPECT_EQ(occ[0] + occ[1] + occ[2], occ[3] + occ[4] + occ[5]);
    }
}

TEST(PsiCm, AmplitudesMatchDirectFormula) {
    const double r = 0.7;
    const int nmax = 5;
    const auto s = build_psi_cm({r, 2, nmax});
    const double deficit = std::pow(std::tanh(r), 2 * (nmax + 1));
    for (std::size_t i = 0; i < s.term_count(); ++i) {
        const auto o = s.occupation(i);
        const int k = o[0] + o[1];
        const double expected = std::pow(std::tanh(r), k) / std::cosh(r) * oracle::com_coefficient({o[0], o[1]}) *
                                oracle::com_coefficient({o[2], o[3]}) / std::sqrt(1.0 - deficit);
        EXPECT_NEAR(s.amplitude(i).real(), expected, 1e-14);
    }
}

TEST(PsiCm, DoublingNmaxOnlyRescales) {
    const auto small = build_psi_cm({1.0, 2, 6});
    const auto big = build_psi_cm({1.0, 2, 12});
    const double factor = std::sqrt((1.0 - small.norm_deficit()) / (1.0 - big.norm_deficit()));
    for (std::size_t i = 0; i < small.term_count(); ++i) {
        const auto a = small.amplitude(i).real();
        const auto b = big.amplitude_of(OccupationVector(small.occupation(i))).real();
        EXPECT_NEAR(b, a * factor, 1e-14);
        EXPECT_LE(b, a);
    }
}

TEST(PsiCm, RejectsBadSpec) {
    EXPECT_THROW(build_psi_cm({-0.1, 2, 3}), DomainError);
    EXPECT_THROW(build_psi_cm({0.1, 0, 3}), DomainError);
    EXPECT_THROW(build_psi_cm({0.1, 2, -1}), DomainError);
    EXPECT_THROW(build_psi_cm({std::nan(""), 2, 3}), DomainError);
}

TEST(Ghz, Examples) {
    const auto ghz = build_generalized_ghz(3, 0.5);
    ASSERT_EQ(ghz.term_count(), 2u);
    EXPECT_NEAR(ghz.amplitude_of(OccupationVector{0, 0, 0}).real(), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(ghz.amplitude_of(OccupationVector{1, 1, 1}).real(), std::sqrt(0.5), 1e-15);
    EXPECT_EQ(ghz.mode_register().local_cutoff(), 1);

    const auto product = build_generalized_ghz(4, 1.0);
    ASSERT_EQ(product.term_count(), 1u);
    EXPECT_EQ(OccupationVector(product.occupation(0)), (OccupationVector{0, 0, 0, 0}));

    const auto two = build_generalized_ghz(2, 0.3);
    EXPECT_NEAR(two.amplitude_of(OccupationVector{0, 0}).real(), std::sqrt(0.3), 1e-15);
    EXPECT_NEAR(two.amplitude_of(OccupationVector{1, 1}).real(), std::sqrt(0.7), 1e-15);

    EXPECT_THROW(build_generalized_ghz(3, 1.2), DomainError);
    EXPECT_THROW(build_generalized_ghz(1, 0.5), DomainError);
}

TEST(Product, Examples) {
    const auto zero = basis_state(ModeRegister::flat(1, 1), OccupationVector{0});
    const auto one = basis_state(ModeRegister::flat(1, 1), OccupationVector{1});
    const PureState left[] = {one, zero};
    const auto ten = build_product(left);
    ASSERT_EQ(ten.term_count(), 1u);
    EXPECT_EQ(OccupationVector(ten.occupation(0)), (OccupationVector{1, 0}));

    const auto phi = build_generalized_ghz(2, 0.5);
    const PureState pair[] = {phi, phi};
    const auto phiphi = build_product(pair);
    ASSERT_EQ(phiphi.term_count(), 4u);
    for (auto a : phiphi.amplitudes()) EXPECT_NEAR(a.real(), 0.5, 1e-15);
    EXPECT_NEAR(phiphi.norm_squared(), 1.0, 1e-15);

    const PureState psi2[] = {zero, build_generalized_ghz(3, 0.5)};
    const auto s = build_product(psi2);
    EXPECT_EQ(s.mode_count(), 4u);
    EXPECT_NEAR(s.amplitude_of(OccupationVector{0, 1, 1, 1}).real(), std::sqrt(0.5), 1e-15);
}

TEST(PureState, CanonicalisesAndValidates) {
    const auto reg = ModeRegister::flat(2, 2);
    PureState s(reg, {{OccupationVector{2, 0}, {0.6, 0}}, {OccupationVector{0, 1}, {0.8, 0}}, {OccupationVector{1, 1}, 0}});
    ASSERT_EQ(s.term_count(), 2u);
    EXPECT_EQ(OccupationVector(s.occupation(0)), (OccupationVector{0, 1}));
    EXPECT_TRUE(s.is_real());
    EXPECT_EQ(s.amplitude_of(OccupationVector{1, 1}), Amplitude(0));

    EXPECT_THROW(PureState(reg, {{OccupationVector{3, 0}, 1}}), DomainError);
    EXPECT_THROW(PureState(reg, {{OccupationVector{1, 0, 0}, 1}}), DomainError);
    EXPECT_THROW(PureState(reg, {{OccupationVector{1, 0}, 0.5}, {OccupationVector{1, 0}, 0.5}}), DomainError);
    EXPECT_THROW(PureState(reg, {{OccupationVector{1, 0}, 1}}, 1.0), DomainError);
}
