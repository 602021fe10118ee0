#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qic/interference.hpp"
#include "qic/predicate.hpp"
#include "qic/random.hpp"
#include "qic/state_vector.hpp"

namespace qic {

/// XOR parity groups over the data bits. Group g is checked by qubit n + g.
class ChecksumScheme {
  public:
    /// Throws SchemeInvalid on an empty group list, an empty group, a bit
    /// index >= data_bits, or a data bit that no group covers.
    ChecksumScheme(unsigned data_bits, std::vector<std::vector<unsigned>> groups);

    /// One group holding every data bit.
    static ChecksumScheme global(unsigned data_bits);

    /// "global" or "groups:0,1;2,3". Throws ParseError on malformed text and
    /// SchemeInvalid on a structurally invalid scheme.
    static ChecksumScheme parse(std::string_view text, unsigned data_bits);

    unsigned data_bits() const { return data_bits_; }
    unsigned checksum_bits() const { return static_cast<unsigned>(groups_.size()); }
    const std::vector<std::vector<unsigned>>& groups() const { return groups_; }
    Register full_register() const { return Register(data_bits_, checksum_bits()); }

    /// Checksum bits of data index x, bit g holding the parity of group g.
    std::uint64_t checksums(BasisIndex x) const;

    std::string to_text() const;

  private:
    unsigned data_bits_;
    std::vector<std::vector<unsigned>> groups_;
};

/// Valid iff every checksum qubit equals the parity of its group.
Predicate checksum_predicate(const ChecksumScheme& scheme);

/// Solution predicate on the data bits conjoined with the checksum predicate,
/// bound to the full register.
Predicate search_predicate(const Predicate& solution, const ChecksumScheme& scheme);

/// Moves amplitude of data index x to (checksums(x) << n) | x. Throws
/// RegisterMismatch unless psi_data spans exactly the scheme's data bits.
StateVector encode(const StateVector& psi_data, const ChecksumScheme& scheme);

struct NoiseModel {
    unsigned events = 0;
    /// Rotation per event, in (0, pi/2].
    double theta = 0.5;

    void validate() const;
};

struct NoiseEvent {
    unsigned qubit = 0;
    double theta = 0.0;

    bool operator==(const NoiseEvent&) const = default;
};

struct NoisyState {
    StateVector state;
    std::vector<NoiseEvent> events;
};

/// Applies model.events partial bit flips, each on a qubit drawn uniformly
/// from the stream.
NoisyState inject_noise(const StateVector& psi, const NoiseModel& model, RandomStream& rng);

/// Removes checksum-invalid components by interference.
StateVector correct(const StateVector& psi, const ChecksumScheme& scheme, const InterferenceConfig& cfg);

enum class EccStatus { Ok, NormCollapse };

std::string_view to_string(EccStatus s);

struct EccReport {
    EccStatus status = EccStatus::Ok;
    double valid_mass_before = 0.0;
    double fidelity_before = 0.0;
    /// Absent when correction collapsed.
    std::optional<double> valid_mass_after;
    std::optional<double> fidelity_after;
    std::vector<NoiseEvent> events;

    ChecksumScheme scheme;
    NoiseModel noise;
    InterferenceConfig interference;
    std::uint64_t seed = 0;
    /// Empty for the uniform data state.
    std::optional<BasisIndex> data_basis;
};

/// Encode a data state (uniform unless `data_basis` is given), inject noise,
/// correct, and report valid mass and fidelity to the ideal encoded state
/// before and after correction.
EccReport ecc_experiment(
    const ChecksumScheme& scheme, const NoiseModel& model, const InterferenceConfig& cfg, std::uint64_t seed,
    std::optional<BasisIndex> data_basis = std::nullopt);

}  // namespace qic
