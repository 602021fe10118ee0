#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qic/random.hpp"

namespace qic {

using Amplitude = std::complex<double>;
using BasisIndex = std::uint64_t;

inline constexpr unsigned kMaxQubits = 30;
inline constexpr double kDefaultCollapseTolerance = 1e-9;
inline constexpr double kNormalizedTolerance = 1e-9;

/// Qubit register of n data qubits followed by k checksum qubits.
///
/// Qubit j is bit j of a basis index (qubit 0 least significant). Checksum
/// qubits occupy bits n .. n+k-1.
class Register {
  public:
    /// Throws std::invalid_argument unless 1 <= n and n + k <= kMaxQubits.
    explicit Register(unsigned data_qubits, unsigned checksum_qubits = 0);

    unsigned data_qubits() const { return data_qubits_; }
    unsigned checksum_qubits() const { return checksum_qubits_; }
    unsigned total() const { return data_qubits_ + checksum_qubits_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << total(); }
    bool contains(BasisIndex i) const { return i < dimension(); }

    bool operator==(const Register&) const = default;

  private:
    unsigned data_qubits_;
    unsigned checksum_qubits_;
};

/// Amplitudes over all 2^m basis states of a register.
class StateVector {
  public:
    /// Takes ownership of `amplitudes` (length must equal the register
    /// dimension). The normalized flag is set when the squared norm is within
    /// kNormalizedTolerance of 1.
    StateVector(Register reg, std::vector<Amplitude> amplitudes);

    /// The computational basis state |i>.
    static StateVector basis(Register reg, BasisIndex i);

    const Register& reg() const { return reg_; }
    unsigned qubits() const { return reg_.total(); }
    std::uint64_t size() const { return amplitudes_.size(); }
    bool normalized() const { return normalized_; }

    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    const Amplitude& operator[](BasisIndex i) const { return amplitudes_[i]; }
    /// Bounds-checked access; throws IndexOutOfRange.
    const Amplitude& at(BasisIndex i) const;

  private:
    friend class StateBuilder;
    StateVector(Register reg, std::vector<Amplitude> amplitudes, bool normalized);

    Register reg_;
    std::vector<Amplitude> amplitudes_;
    bool normalized_;
};

/// Mutable staging buffer for operations that produce a new state.
class StateBuilder {
  public:
    /// Zero amplitudes.
    explicit StateBuilder(Register reg);
    /// Copy of `source`'s amplitudes.
    explicit StateBuilder(const StateVector& source);

    const Register& reg() const { return reg_; }
    std::span<Amplitude> amplitudes() { return amplitudes_; }
    Amplitude& operator[](BasisIndex i) { return amplitudes_[i]; }

    /// Normalized flag detected from the data.
    StateVector build() &&;
    /// Normalized flag supplied by a caller that knows it.
    StateVector build_with_flag(bool normalized) &&;

  private:
    Register reg_;
    std::vector<Amplitude> amplitudes_;
};

/// Set of valid basis indices, stored as 2^m packed flags.
class PhaseMask {
  public:
    /// All indices invalid.
    explicit PhaseMask(Register reg);
    /// Throws IndexOutOfRange if any index is outside the register.
    PhaseMask(Register reg, std::span<const BasisIndex> valid);
    /// Takes packed flags (bit i%64 of word i/64). Bits beyond 2^m are cleared.
    static PhaseMask from_words(Register reg, std::vector<std::uint64_t> words);

    const Register& reg() const { return reg_; }
    bool is_valid(BasisIndex i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(BasisIndex i, bool valid);
    std::uint64_t count() const;
    std::vector<BasisIndex> valid_indices() const;
    std::span<const std::uint64_t> words() const { return words_; }

    bool operator==(const PhaseMask&) const = default;

  private:
    Register reg_;
    std::vector<std::uint64_t> words_;
};

StateVector uniform_superposition(Register reg);

/// Sum of |amp_i|^2, accumulated in a fixed pairwise order.
double norm_squared(const StateVector& psi);

/// Copy scaled to unit norm. Throws NormCollapse when the squared norm is
/// below `tol`, and std::invalid_argument when tol <= 0.
StateVector normalize(const StateVector& psi, double tol = kDefaultCollapseTolerance);

/// |amp_i|^2. Throws IndexOutOfRange.
double probability(const StateVector& psi, BasisIndex i);

/// Draws one basis index with probability |amp_i|^2 using a single uniform
/// draw and a linear cumulative scan in index order. A state that is not
/// flagged normalized is scaled by its norm (NormCollapse below the default
/// tolerance).
BasisIndex sample(const StateVector& psi, RandomStream& rng);

/// <psi|phi>, accumulated in a fixed pairwise order. Throws RegisterMismatch.
Amplitude inner_product(const StateVector& psi, const StateVector& phi);

/// |<psi|phi>|^2. Throws RegisterMismatch.
double fidelity(const StateVector& psi, const StateVector& phi);

/// Negates every amplitude whose index is not valid in `mask`.
StateVector apply_phase_mask(const StateVector& psi, const PhaseMask& mask);

/// Applies cos(theta) I + i sin(theta) X_qubit.
StateVector apply_partial_bit_flip(const StateVector& psi, unsigned qubit, double theta);

/// Squared norm carried by the indices valid in `mask`.
double valid_mass(const StateVector& psi, const PhaseMask& mask);

/// Fixed-width rendering b_{m-1} ... b_0 (most significant qubit first).
std::string to_bitstring(BasisIndex i, unsigned qubits);
/// Inverse of to_bitstring; throws ParseError on characters other than 0/1
/// and IndexOutOfRange when the width exceeds kMaxQubits.
BasisIndex parse_bitstring(std::string_view bits);

}  // namespace qic
