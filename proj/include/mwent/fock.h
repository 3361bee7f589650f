#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mwent {

using count_t = std::uint16_t;

/// Per-mode phonon counts labelling a Fock basis vector |n_1 ... n_F>.
/// The length is fixed at construction.
class OccupationVector {
   public:
    OccupationVector() = default;
    explicit OccupationVector(std::size_t modes) : counts_(modes, 0) {}
    explicit OccupationVector(std::span<const count_t> counts) : counts_(counts.begin(), counts.end()) {}
    explicit OccupationVector(std::vector<count_t> counts) : counts_(std::move(counts)) {}
    /// Throws DomainError on negative or oversized entries.
    OccupationVector(std::initializer_list<int> counts);

    static OccupationVector from_ints(std::span<const int> counts);

    std::size_t size() const noexcept { return counts_.size(); }
    count_t operator[](std::size_t mode) const { return counts_[mode]; }
    std::span<const count_t> counts() const noexcept { return counts_; }
    std::uint64_t total() const noexcept;

    /// "(n1,n2,...)"
    std::string to_string() const;

    auto operator<=>(const OccupationVector &) const = default;
    bool operator==(const OccupationVector &) const = default;

   private:
    std::vector<count_t> counts_;
};

/// The ordered list of modes a state lives on, optionally grouped into two traps
/// (modes [0, N1) belong to the first trap, [N1, N1+N2) to the second).
class ModeRegister {
   public:
    static ModeRegister flat(std::size_t modes, int local_cutoff);
    static ModeRegister traps(int first, int second, int local_cutoff);

    std::size_t mode_count() const noexcept { return modes_; }
    int local_cutoff() const noexcept { return local_cutoff_; }
    bool has_traps() const noexcept { return trap_sizes_.has_value(); }
    std::optional<std::pair<int, int>> trap_sizes() const noexcept { return trap_sizes_; }

    /// True iff `counts` has one entry per mode and none exceeds the cutoff.
    bool admits(std::span<const count_t> counts) const noexcept;

    bool operator==(const ModeRegister &) const = default;

   private:
    ModeRegister(std::size_t modes, int local_cutoff, std::optional<std::pair<int, int>> traps)
        : modes_(modes), local_cutoff_(local_cutoff), trap_sizes_(traps) {}

    std::size_t modes_ = 0;
    int local_cutoff_ = 0;
    std::optional<std::pair<int, int>> trap_sizes_;
};

/// Registers placed side by side. Trap structure is not preserved.
ModeRegister concatenate(const ModeRegister &a, const ModeRegister &b);

/// Every length-`parts` vector of non-negative integers summing to `total`,
/// in ascending lexicographic order. There are C(total+parts-1, parts-1) of them.
std::vector<OccupationVector> enumerate_compositions(int total, int parts);

/// Allocation-free variant of enumerate_compositions; same order.
void for_each_composition(int total, int parts, const std::function<void(std::span<const count_t>)> &visit);

/// Number of compositions of `total` into `parts` non-negative parts.
std::uint64_t composition_count(int total, int parts);

/// ln(n!)
double log_factorial(int n);

/// Overlap <n|N> between an individual-atom Fock state |n_1..n_P> and the
/// centre-of-mass Fock state |N> of P atoms: sqrt(N! / (n_1!...n_P! P^N)).
/// Throws DomainError unless counts sum to `total`.
double com_coefficient(std::span<const count_t> counts, int total);
double com_coefficient(const OccupationVector &nvec, int total);

}  // namespace mwent
