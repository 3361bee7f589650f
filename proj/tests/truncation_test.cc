#include <gtest/gtest.h>

#include <cmath>

#include "mwent/com_reduction.h"
#include "mwent/errors.h"
#include "mwent/split.h"
#include "mwent/truncation.h"
#include "oracles.h"

using namespace mwent;

TEST(TailWeight, Examples) {
    EXPECT_NEAR(tail_weight(1.0, 9), 4.30995e-3, 1e-8);
    EXPECT_NEAR(tail_weight(0.5, 9), 1.97261e-7, 1e-12);
    EXPECT_EQ(tail_weight(0.0, 0), 0.0);
    EXPECT_NEAR(tail_weight(1.0, 0), oracle::lambda(1.0), 1e-15);
    EXPECT_THROW(tail_weight(-1.0, 3), DomainError);
    EXPECT_THROW(tail_weight(1.0, -1), DomainError);
}

TEST(TailWeight, Monotone) {
    for (double r : {0.2, 0.9, 1.5}) {
        for (int n = 0; n < 60; ++n) EXPECT_LT(tail_weight(r, n + 1), tail_weight(r, n));
    }
    for (int n : {0, 5, 20}) EXPECT_LT(tail_weight(0.5, n), tail_weight(0.6, n));
}

TEST(ErrorEstimates, Formulae) {
    EXPECT_DOUBLE_EQ(trace_distance_bound(0.01), 0.21);
    EXPECT_DOUBLE_EQ(purity_error_estimate(1e-4, 3e-5), 2.3e-4);
}

TEST(SelectNmax, Examples) {
    const TruncationBudget budget{1e-3, 64};
    const auto at_one = select_nmax(1.0, 2, budget);
    EXPECT_EQ(at_one.nmax, 15);
    EXPECT_GE(at_one.nmax, 11);
    EXPECT_LE(at_one.achieved_tail, 2.5e-4);
    EXPECT_LT(at_one.convergence_gap, 2.5e-4);
    EXPECT_EQ(select_nmax(0.0, 3, budget).nmax, 0);
    EXPECT_EQ(select_nmax(1.5, 4, budget).nmax, 41);
}

TEST(SelectNmax, Infeasible) {
    try {
        select_nmax(1.5, 2, TruncationBudget{1e-3, 10});
        FAIL() << "expected BudgetInfeasible";
    } catch (const BudgetInfeasible &e) {
        EXPECT_EQ(e.r(), 1.5);
    }
    EXPECT_THROW(select_nmax(1.0, 2, TruncationBudget{0.0, 10}), DomainError);
}

TEST(SelectNmax, MonotoneInR) {
    int last = 0;
    for (int k = 0; k <= 15; ++k) {
        const int n = select_nmax(k / 10.0, 2, TruncationBudget{}).nmax;
        EXPECT_GE(n, last);
        last = n;
    }
}

TEST(SelectNmax, ErrorEstimateCoversDoubling) {
    for (int n : {2, 3}) {
        for (int k = 1; k <= 15; ++k) {
            const double r = k / 10.0;
            const auto classes = symmetry_classes(n);
            const PurityProbe probe = [&](int nmax) {
                std::vector<double> out;
                for (const auto &c : classes) out.push_back(com_purity({r, n, nmax}, c));
                return out;
            };
            const int nmax = select_nmax(r, TruncationBudget{}, probe).nmax;
            const double estimate = purity_error_estimate(tail_weight(r, nmax), convergence_gap(probe, nmax));
            EXPECT_LE(convergence_gap(probe, nmax, nmax), estimate) << "N=" << n << " r=" << r;
            EXPECT_LT(estimate, 1e-3);
        }
    }
}

TEST(ConvergenceGap, ZeroForExactProbe) {
    const PurityProbe constant = [](int) { return std::vector<double>{0.5, 0.25}; };
    EXPECT_EQ(convergence_gap(constant, 3), 0.0);
}
