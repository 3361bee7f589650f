#include "mwent/states.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "mwent/errors.h"
#include "mwent/truncation.h"

namespace mwent {

PureState::PureState(ModeRegister reg, std::vector<BasisTerm> terms, double norm_deficit)
    : register_(std::move(reg)), norm_deficit_(norm_deficit) {
    const std::size_t width = register_.mode_count();
    occupations_.reserve(terms.size() * width);
    amplitudes_.reserve(terms.size());
    for (const auto &term : terms) {
        if (term.occupation.size() != width) {
            throw DomainError(fmt::format("basis vector {} has {} modes, register has {}",
                                          term.occupation.to_string(), term.occupation.size(), width));
        }
        auto counts = term.occupation.counts();
        occupations_.insert(occupations_.end(), counts.begin(), counts.end());
        amplitudes_.push_back(term.amplitude);
    }
    canonicalize();
}

PureState::PureState(ModeRegister reg, std::vector<count_t> occupations, std::vector<Amplitude> amplitudes,
                     double norm_deficit)
    : register_(std::move(reg)),
      occupations_(std::move(occupations)),
      amplitudes_(std::move(amplitudes)),
      norm_deficit_(norm_deficit) {
    if (occupations_.size() != amplitudes_.size() * register_.mode_count()) {
        throw DomainError("occupation buffer does not match the amplitude count");
    }
    canonicalize();
}

void PureState::canonicalize() {
    if (!(norm_deficit_ >= 0.0 && norm_deficit_ < 1.0)) {
        throw DomainError(fmt::format("norm deficit {} outside [0, 1)", norm_deficit_));
    }
    const std::size_t width = register_.mode_count();
    const std::size_t n = amplitudes_.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::span<const count_t> key{occupations_.data() + i * width, width};
        if (!register_.admits(key)) {
            throw DomainError(fmt::format("basis vector {} exceeds the register cutoff {}",
                                          OccupationVector(key).to_string(), register_.local_cutoff()));
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key_of = [&](std::size_t i) { return std::span<const count_t>{occupations_.data() + i * width, width}; };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto ka = key_of(a);
        auto kb = key_of(b);
        return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
    });

    std::vector<count_t> occupations;
    std::vector<Amplitude> amplitudes;
    occupations.reserve(occupations_.size());
    amplitudes.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = order[k];
        if (k > 0 && std::ranges::equal(key_of(i), key_of(order[k - 1]))) {
            throw DomainError(fmt::format("basis vector {} appears twice", OccupationVector(key_of(i)).to_string()));
        }
        if (amplitudes_[i] == Amplitude{0.0, 0.0}) continue;
        auto key = key_of(i);
        occupations.insert(occupations.end(), key.begin(), key.end());
        amplitudes.push_back(amplitudes_[i]);
    }
    occupations_ = std::move(occupations);
    amplitudes_ = std::move(amplitudes);
}

Amplitude PureState::amplitude_of(const OccupationVector &occupation) const {
    const std::size_t width = mode_count();
    if (occupation.size() != width) return {0.0, 0.0};
    auto target = occupation.counts();
    std::size_t lo = 0;
    std::size_t hi = term_count();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto key = this->occupation(mid);
        if (std::lexicographical_compare(key.begin(), key.end(), target.begin(), target.end())) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo < term_count() && std::ranges::equal(this->occupation(lo), target)) return amplitudes_[lo];
    return {0.0, 0.0};
}

double PureState::norm_squared() const {
    double sum = 0.0;
    for (const auto &a : amplitudes_) sum += std::norm(a);
    return sum;
}

bool PureState::is_real() const noexcept {
    return std::ranges::all_of(amplitudes_, [](const Amplitude &a) { return a.imag() == 0.0; });
}

std::vector<BasisTerm> PureState::terms() const {
    std::vector<BasisTerm> out;
    out.reserve(term_count());
    for (std::size_t i = 0; i < term_count(); ++i) out.push_back({OccupationVector(occupation(i)), amplitudes_[i]});
    return out;
}

void SqueezedPairSpec::validate() const {
    if (!std::isfinite(r) || r < 0.0) throw DomainError(fmt::format("squeezing parameter r = {} must be >= 0", r));
    if (atoms_per_trap < 1) throw DomainError("need at least one atom per trap");
    if (nmax < 0) throw DomainError("nmax must be non-negative");
}

PureState build_psi_cm(const SqueezedPairSpec &spec) {
    spec.validate();
    const int n_atoms = spec.atoms_per_trap;
    const double t = std::tanh(spec.r);
    const double tail = tail_weight(spec.r, spec.nmax);
    const double prefactor = 1.0 / (std::cosh(spec.r) * std::sqrt(1.0 - tail));

    std::vector<count_t> occupations;
    std::vector<Amplitude> amplitudes;
    std::vector<count_t> level_keys;
    std::vector<double> level_coeffs;
    for (int level = 0; level <= spec.nmax; ++level) {
        const double weight = prefactor * std::pow(t, level);
        if (weight == 0.0) break;
        level_keys.clear();
        level_coeffs.clear();
        for_each_composition(level, n_atoms, [&](std::span<const count_t> c) {
            level_keys.insert(level_keys.end(), c.begin(), c.end());
            level_coeffs.push_back(com_coefficient(c, level));
        });
        const std::size_t count = level_coeffs.size();
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = 0; j < count; ++j) {
                occupations.insert(occupations.end(), level_keys.begin() + i * n_atoms,
                                   level_keys.begin() + (i + 1) * n_atoms);
                occupations.insert(occupations.end(), level_keys.begin() + j * n_atoms,
                                   level_keys.begin() + (j + 1) * n_atoms);
                amplitudes.emplace_back(weight * level_coeffs[i] * level_coeffs[j], 0.0);
            }
        }
    }
    return PureState(ModeRegister::traps(n_atoms, n_atoms, spec.nmax), std::move(occupations), std::move(amplitudes),
                     tail);
}

PureState build_generalized_ghz(int parties, double c) {
    if (parties < 2) throw DomainError("a GHZ-family state needs at least two parties");
    if (!(c >= 0.0 && c <= 1.0)) throw DomainError(fmt::format("GHZ weight c = {} outside [0, 1]", c));
    const auto n = static_cast<std::size_t>(parties);
    std::vector<BasisTerm> terms;
    terms.push_back({OccupationVector(std::vector<count_t>(n, 0)), {std::sqrt(c), 0.0}});
    terms.push_back({OccupationVector(std::vector<count_t>(n, 1)), {std::sqrt(1.0 - c), 0.0}});
    return PureState(ModeRegister::flat(n, 1), std::move(terms));
}

PureState basis_state(const ModeRegister &reg, const OccupationVector &occupation) {
    return PureState(reg, {BasisTerm{occupation, {1.0, 0.0}}});
}

PureState build_product(std::span<const PureState> factors) {
    if (factors.empty()) throw DomainError("product of zero states");
    ModeRegister reg = factors.front().mode_register();
    std::vector<count_t> acc_occ;
    std::vector<Amplitude> acc_amp;
    {
        const auto &first = factors.front();
        for (std::size_t i = 0; i < first.term_count(); ++i) {
            auto key = first.occupation(i);
            acc_occ.insert(acc_occ.end(), key.begin(), key.end());
            acc_amp.push_back(first.amplitude(i));
        }
    }
    double kept_weight = 1.0 - factors.front().norm_deficit();
    std::size_t width = reg.mode_count();
    for (std::size_t f = 1; f < factors.size(); ++f) {
        const auto &next = factors[f];
        const std::size_t next_width = next.mode_count();
        std::vector<count_t> occ;
        std::vector<Amplitude> amp;
        occ.reserve(acc_amp.size() * next.term_count() * (width + next_width));
        amp.reserve(acc_amp.size() * next.term_count());
        for (std::size_t i = 0; i < acc_amp.size(); ++i) {
            for (std::size_t j = 0; j < next.term_count(); ++j) {
                occ.insert(occ.end(), acc_occ.begin() + i * width, acc_occ.begin() + (i + 1) * width);
                auto key = next.occupation(j);
                occ.insert(occ.end(), key.begin(), key.end());
                amp.push_back(acc_amp[i] * next.amplitude(j));
            }
        }
        acc_occ = std::move(occ);
        acc_amp = std::move(amp);
        reg = concatenate(reg, next.mode_register());
        width = reg.mode_count();
        kept_weight *= 1.0 - next.norm_deficit();
    }
    return PureState(reg, std::move(acc_occ), std::move(acc_amp), 1.0 - kept_weight);
}

}  // namespace mwent
