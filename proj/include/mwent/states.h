#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mwent/fock.h"

namespace mwent {

using Amplitude = std::complex<double>;

struct BasisTerm {
    OccupationVector occupation;
    Amplitude amplitude;
};

/// Sparse pure state over a mode register. Terms are kept sorted by occupation
/// (lexicographic) and never carry an exactly-zero amplitude.
///
/// `norm_deficit` is the probability weight a builder deliberately discarded
/// (e.g. a truncated tail) before renormalising what remains; states read from
/// files or assembled by hand carry 0.
class PureState {
   public:
    /// Throws DomainError if a key does not fit the register, a key repeats, or
    /// the deficit is outside [0, 1).
    PureState(ModeRegister reg, std::vector<BasisTerm> terms, double norm_deficit = 0.0);

    /// Bulk constructor: `occupations` holds term_count * mode_count counts back to back.
    PureState(ModeRegister reg, std::vector<count_t> occupations, std::vector<Amplitude> amplitudes,
              double norm_deficit = 0.0);

    const ModeRegister &mode_register() const noexcept { return register_; }
    std::size_t mode_count() const noexcept { return register_.mode_count(); }
    std::size_t term_count() const noexcept { return amplitudes_.size(); }

    std::span<const count_t> occupation(std::size_t term) const {
        return {occupations_.data() + term * mode_count(), mode_count()};
    }
    Amplitude amplitude(std::size_t term) const { return amplitudes_[term]; }
    std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }

    /// Amplitude of a basis vector, 0 when it is outside the support.
    Amplitude amplitude_of(const OccupationVector &occupation) const;

    double norm_squared() const;
    double norm_deficit() const noexcept { return norm_deficit_; }

    /// True when every imaginary part is exactly zero.
    bool is_real() const noexcept;

    std::vector<BasisTerm> terms() const;

   private:
    void canonicalize();

    ModeRegister register_;
    std::vector<count_t> occupations_;
    std::vector<Amplitude> amplitudes_;
    double norm_deficit_ = 0.0;
};

/// Parameters of the two-trap centre-of-mass state.
struct SqueezedPairSpec {
    double r = 0.0;          ///< squeezing parameter, >= 0
    int atoms_per_trap = 1;  ///< N >= 1
    int nmax = 0;            ///< centre-of-mass truncation level, >= 0

    /// Throws DomainError for r < 0, non-finite r, N < 1 or nmax < 0.
    void validate() const;
};

/// |psi_CM> truncated at nmax, expanded over individual-atom Fock states.
/// The amplitude of |n>_1|m>_2 is tanh^K(r)/cosh(r) * c(n,K) * c(m,K) with
/// K = sum(n) = sum(m) <= nmax, rescaled so the truncated state has unit norm.
PureState build_psi_cm(const SqueezedPairSpec &spec);

/// sqrt(c)|0...0> + sqrt(1-c)|1...1> on `parties` qubit-like modes.
PureState build_generalized_ghz(int parties, double c);

/// Single Fock basis vector with amplitude 1.
PureState basis_state(const ModeRegister &reg, const OccupationVector &occupation);

/// Tensor product; the registers are concatenated in order.
PureState build_product(std::span<const PureState> factors);

}  // namespace mwent
