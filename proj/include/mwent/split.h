#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mwent/fock.h"

namespace mwent {

/// Atoms traced from each trap of a two-trap register: (T, V).
struct TrapCut {
    int first = 0;
    int second = 0;

    bool operator==(const TrapCut &) const = default;
    auto operator<=>(const TrapCut &) const = default;
};

/// A bipartite split of a mode register: the traced modes Q and their complement.
/// Mode indices are 0-based; labels print them 1-based.
class SplitSpec {
   public:
    /// Throws DomainError unless `traced` is a non-empty proper subset of [0, mode_count).
    SplitSpec(std::size_t mode_count, std::vector<std::size_t> traced);

    /// Representative of the (T, V) class: the first T atoms of trap one and the
    /// first V atoms of trap two are traced.
    static SplitSpec from_cut(const ModeRegister &reg, TrapCut cut);

    std::size_t mode_count() const noexcept { return mode_count_; }
    std::span<const std::size_t> traced_modes() const noexcept { return traced_; }
    std::vector<std::size_t> kept_modes() const;
    bool is_traced(std::size_t mode) const;

    /// Set when the split was built from a (T, V) class representative.
    std::optional<TrapCut> cut() const noexcept { return cut_; }

    SplitSpec complement() const;

    /// "{1,3}"
    std::string label() const;

    bool operator==(const SplitSpec &other) const { return mode_count_ == other.mode_count_ && traced_ == other.traced_; }

   private:
    std::size_t mode_count_;
    std::vector<std::size_t> traced_;
    std::optional<TrapCut> cut_;
};

/// How many atoms of each trap a split traces. The register must have traps.
TrapCut cut_of(const ModeRegister &reg, const SplitSpec &split);

/// Canonical representative of a (T, V) class under trap exchange (only when
/// both traps have equal size) and, for half-size cuts, complementation.
TrapCut canonical_cut(const ModeRegister &reg, TrapCut cut);

/// Splits evaluated by the M-way entanglement test.
///
/// Without symmetry: every subset of 1..floor(F/2) modes; when F is even the
/// half-size subsets are kept only if they contain mode 0 (one per complement pair).
/// With symmetry (two-trap registers only): one representative per canonical
/// (T, V) class, ordered by T+V then T.
std::vector<SplitSpec> enumerate_splits(const ModeRegister &reg, bool use_symmetry);

/// The canonical (T, V) classes for two traps of N atoms, in enumerate_splits order.
std::vector<TrapCut> symmetry_classes(int atoms_per_trap);

}  // namespace mwent
