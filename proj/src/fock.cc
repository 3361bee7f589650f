#include "mwent/fock.h"

#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "mwent/errors.h"

namespace mwent {

namespace {

count_t checked_count(long long value) {
    if (value < 0 || value > std::numeric_limits<count_t>::max()) {
        throw DomainError(fmt::format("occupation {} outside [0, {}]", value, std::numeric_limits<count_t>::max()));
    }
    return static_cast<count_t>(value);
}

void compositions_rec(std::vector<count_t> &buffer, std::size_t position, int remaining,
                      const std::function<void(std::span<const count_t>)> &visit) {
    if (position + 1 == buffer.size()) {
        buffer[position] = static_cast<count_t>(remaining);
        visit(buffer);
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        buffer[position] = static_cast<count_t>(k);
        compositions_rec(buffer, position + 1, remaining - k, visit);
    }
}

}  // namespace

OccupationVector::OccupationVector(std::initializer_list<int> counts) {
    counts_.reserve(counts.size());
    for (int c : counts) counts_.push_back(checked_count(c));
}

OccupationVector OccupationVector::from_ints(std::span<const int> counts) {
    std::vector<count_t> out;
    out.reserve(counts.size());
    for (int c : counts) out.push_back(checked_count(c));
    return OccupationVector(std::move(out));
}

std::uint64_t OccupationVector::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::string OccupationVector::to_string() const {
    return fmt::format("({})", fmt::join(counts_, ","));
}

ModeRegister ModeRegister::flat(std::size_t modes, int local_cutoff) {
    if (modes == 0) throw DomainError("mode register needs at least one mode");
    if (local_cutoff < 0) throw DomainError("local cutoff must be non-negative");
    return ModeRegister(modes, local_cutoff, std::nullopt);
}

ModeRegister ModeRegister::traps(int first, int second, int local_cutoff) {
    if (first < 0 || second < 0 || first + second < 1) {
        throw DomainError(fmt::format("invalid trap sizes ({}, {})", first, second));
    }
    if (local_cutoff < 0) throw DomainError("local cutoff must be non-negative");
    return ModeRegister(static_cast<std::size_t>(first + second), local_cutoff, std::make_pair(first, second));
}

bool ModeRegister::admits(std::span<const count_t> counts) const noexcept {
    if (counts.size() != modes_) return false;
    for (count_t c : counts) {
        if (c > local_cutoff_) return false;
    }
    return true;
}

ModeRegister concatenate(const ModeRegister &a, const ModeRegister &b) {
    return ModeRegister::flat(a.mode_count() + b.mode_count(), std::max(a.local_cutoff(), b.local_cutoff()));
}

void for_each_composition(int total, int parts, const std::function<void(std::span<const count_t>)> &visit) {
    if (parts < 1) throw DomainError("compositions need at least one part");
    if (total < 0) throw DomainError("composition total must be non-negative");
    std::vector<count_t> buffer(static_cast<std::size_t>(parts), 0);
    compositions_rec(buffer, 0, total, visit);
}

std::vector<OccupationVector> enumerate_compositions(int total, int parts) {
    std::vector<OccupationVector> out;
    out.reserve(composition_count(total, parts));
    for_each_composition(total, parts, [&](std::span<const count_t> c) { out.emplace_back(c); });
    return out;
}

std::uint64_t composition_count(int total, int parts) {
    if (parts < 1 || total < 0) return 0;
    // C(total + parts - 1, parts - 1), built incrementally so every step is exact.
    std::uint64_t result = 1;
    for (int k = 1; k < parts; ++k) {
        result = result * static_cast<std::uint64_t>(total + k) / static_cast<std::uint64_t>(k);
    }
    return result;
}

double log_factorial(int n) {
    if (n < 0) throw DomainError("log_factorial of a negative number");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double com_coefficient(std::span<const count_t> counts, int total) {
    if (counts.empty()) throw DomainError("com_coefficient needs at least one mode");
    std::uint64_t sum = 0;
    double log_value = log_factorial(total);
    for (count_t c : counts) {
        sum += c;
        log_value -= log_factorial(c);
    }
    if (total < 0 || sum != static_cast<std::uint64_t>(total)) {
        throw DomainError(fmt::format("occupations sum to {} but the centre-of-mass level is {}", sum, total));
    }
    log_value -= static_cast<double>(total) * std::log(static_cast<double>(counts.size()));
    return std::exp(0.5 * log_value);
}

double com_coefficient(const OccupationVector &nvec, int total) { return com_coefficient(nvec.counts(), total); }

}  // namespace mwent
