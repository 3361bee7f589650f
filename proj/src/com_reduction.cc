#include "mwent/com_reduction.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "mwent/errors.h"
#include "mwent/truncation.h"

namespace mwent {

double split_amplitude(int level, int a, double p) {
    if (a < 0 || a > level) return 0.0;
    if (p <= 0.0) return a == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return a == level ? 1.0 : 0.0;
    const double log_value = log_factorial(level) - log_factorial(a) - log_factorial(level - a) +
                             a * std::log(p) + (level - a) * std::log1p(-p);
    return std::exp(0.5 * log_value);
}

std::vector<Eigen::MatrixXd> com_gram_blocks(const SqueezedPairSpec &spec, TrapCut cut) {
    spec.validate();
    const int n = spec.atoms_per_trap;
    if (cut.first < 0 || cut.second < 0 || cut.first > n || cut.second > n || cut.first + cut.second < 1 ||
        cut.first + cut.second > 2 * n - 1) {
        throw DomainError(fmt::format("cut ({}, {}) is not a proper split of two {}-atom traps", cut.first, cut.second, n));
    }
    const int nmax = spec.nmax;
    const double p1 = static_cast<double>(cut.first) / n;
    const double p2 = static_cast<double>(cut.second) / n;

    const double t = std::tanh(spec.r);
    const double prefactor = 1.0 / (std::cosh(spec.r) * std::sqrt(1.0 - tail_weight(spec.r, nmax)));
    std::vector<double> weight(static_cast<std::size_t>(nmax) + 1);
    for (int k = 0; k <= nmax; ++k) weight[k] = prefactor * std::pow(t, k);

    // beta[p][K][a]
    auto table = [&](double p) {
        std::vector<std::vector<double>> out(static_cast<std::size_t>(nmax) + 1);
        for (int k = 0; k <= nmax; ++k) {
            out[k].resize(static_cast<std::size_t>(k) + 1);
            for (int a = 0; a <= k; ++a) out[k][a] = split_amplitude(k, a, p);
        }
        return out;
    };
    const auto beta1 = table(p1);
    const auto beta2 = table(p2);

    std::vector<Eigen::MatrixXd> blocks;
    for (int delta = -nmax; delta <= nmax; ++delta) {
        const int a_lo = std::max(0, delta);
        const int b_lo = std::max(0, -delta);
        const int rows = nmax - a_lo + 1;
        const int cols = nmax - b_lo + 1;
        if (rows <= 0 || cols <= 0) continue;
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
        bool any = false;
        for (int a1 = a_lo; a1 <= nmax; ++a1) {
            const int a2 = a1 - delta;
            for (int b1 = b_lo; a1 + b1 <= nmax; ++b1) {
                const int level = a1 + b1;
                if (a2 > level) continue;
                const double v = weight[level] * beta1[level][a1] * beta2[level][a2];
                if (v != 0.0) {
                    m(a1 - a_lo, b1 - b_lo) = v;
                    any = true;
                }
            }
        }
        if (!any) continue;
        blocks.push_back(m * m.transpose());
    }
    return blocks;
}

double com_purity(const SqueezedPairSpec &spec, TrapCut cut) {
    double total = 0.0;
    for (const auto &g : com_gram_blocks(spec, cut)) total += g.squaredNorm();
    return std::min(total, 1.0);
}

std::vector<double> com_spectrum(const SqueezedPairSpec &spec, TrapCut cut) {
    std::vector<double> values;
    for (const auto &g : com_gram_blocks(spec, cut)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) values.push_back(solver.eigenvalues()(i));
    }
    std::ranges::sort(values, std::greater<>{});
    return values;
}

}  // namespace mwent
