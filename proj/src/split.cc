#include "mwent/split.h"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "mwent/errors.h"

namespace mwent {

SplitSpec::SplitSpec(std::size_t mode_count, std::vector<std::size_t> traced)
    : mode_count_(mode_count), traced_(std::move(traced)) {
    std::ranges::sort(traced_);
    if (std::ranges::adjacent_find(traced_) != traced_.end()) throw DomainError("split lists a mode twice");
    if (traced_.empty()) throw DomainError("split must trace at least one mode");
    if (traced_.back() >= mode_count_) {
        throw DomainError(fmt::format("split traces mode {} of a {}-mode register", traced_.back() + 1, mode_count_));
    }
    if (traced_.size() == mode_count_) throw DomainError("split must keep at least one mode");
}

SplitSpec SplitSpec::from_cut(const ModeRegister &reg, TrapCut cut) {
    auto traps = reg.trap_sizes();
    if (!traps) throw DomainError("(T, V) splits need a two-trap register");
    if (cut.first < 0 || cut.second < 0 || cut.first > traps->first || cut.second > traps->second) {
        throw DomainError(fmt::format("cut ({}, {}) does not fit traps ({}, {})", cut.first, cut.second, traps->first,
                                      traps->second));
    }
    std::vector<std::size_t> traced;
    for (int i = 0; i < cut.first; ++i) traced.push_back(static_cast<std::size_t>(i));
    for (int i = 0; i < cut.second; ++i) traced.push_back(static_cast<std::size_t>(traps->first + i));
    SplitSpec split(reg.mode_count(), std::move(traced));
    split.cut_ = cut;
    return split;
}

std::vector<std::size_t> SplitSpec::kept_modes() const {
    std::vector<std::size_t> kept;
    kept.reserve(mode_count_ - traced_.size());
    for (std::size_t m = 0; m < mode_count_; ++m) {
        if (!is_traced(m)) kept.push_back(m);
    }
    return kept;
}

bool SplitSpec::is_traced(std::size_t mode) const { return std::ranges::binary_search(traced_, mode); }

SplitSpec SplitSpec::complement() const { return SplitSpec(mode_count_, kept_modes()); }

std::string SplitSpec::label() const {
    std::vector<std::size_t> one_based;
    one_based.reserve(traced_.size());
    for (auto m : traced_) one_based.push_back(m + 1);
    return fmt::format("{{{}}}", fmt::join(one_based, ","));
}

TrapCut cut_of(const ModeRegister &reg, const SplitSpec &split) {
    auto traps = reg.trap_sizes();
    if (!traps) throw DomainError("register has no trap structure");
    TrapCut cut;
    for (auto m : split.traced_modes()) {
        if (m < static_cast<std::size_t>(traps->first)) {
            ++cut.first;
        } else {
            ++cut.second;
        }
    }
    return cut;
}

TrapCut canonical_cut(const ModeRegister &reg, TrapCut cut) {
    auto traps = reg.trap_sizes();
    if (!traps) throw DomainError("register has no trap structure");
    const bool exchangeable = traps->first == traps->second;
    const int size = cut.first + cut.second;
    const int total = traps->first + traps->second;

    std::vector<TrapCut> candidates{cut};
    if (exchangeable) candidates.push_back({cut.second, cut.first});
    if (2 * size == total) {
        TrapCut other{traps->first - cut.first, traps->second - cut.second};
        candidates.push_back(other);
        if (exchangeable) candidates.push_back({other.second, other.first});
    }
    return *std::ranges::max_element(candidates);
}

std::vector<SplitSpec> enumerate_splits(const ModeRegister &reg, bool use_symmetry) {
    const std::size_t f = reg.mode_count();
    if (f < 2) throw DomainError("splits need at least two modes");
    std::vector<SplitSpec> out;

    if (use_symmetry) {
        auto traps = reg.trap_sizes();
        if (!traps) throw DomainError("symmetry-reduced splits need a two-trap register");
        std::set<TrapCut> seen;
        for (int size = 1; size <= static_cast<int>(f / 2); ++size) {
            for (int t = std::min(size, traps->first); t >= std::max(0, size - traps->second); --t) {
                TrapCut canon = canonical_cut(reg, {t, size - t});
                if (seen.insert(canon).second) out.push_back(SplitSpec::from_cut(reg, canon));
            }
        }
        return out;
    }

    for (std::size_t size = 1; size <= f / 2; ++size) {
        // Walk size-element subsets in lexicographic order.
        std::vector<std::size_t> subset(size);
        for (std::size_t i = 0; i < size; ++i) subset[i] = i;
        while (true) {
            if (!(2 * size == f && subset.front() != 0)) out.emplace_back(f, subset);
            std::size_t i = size;
            while (i > 0 && subset[i - 1] == f - size + (i - 1)) --i;
            if (i == 0) break;
            ++subset[i - 1];
            for (std::size_t j = i; j < size; ++j) subset[j] = subset[j - 1] + 1;
        }
    }
    return out;
}

std::vector<TrapCut> symmetry_classes(int atoms_per_trap) {
    std::vector<TrapCut> cuts;
    for (const auto &split : enumerate_splits(ModeRegister::traps(atoms_per_trap, atoms_per_trap, 0), true)) {
        cuts.push_back(*split.cut());
    }
    return cuts;
}

}  // namespace mwent
