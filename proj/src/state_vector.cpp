#include "qic/state_vector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qic/error.hpp"

namespace qic {

namespace {

constexpr std::uint64_t kPairwiseBlock = 128;

// Fixed-shape pairwise reduction of term(i) over [begin, end). The split
// points depend only on the range, so results are bit-identical run to run.
template <typename T, typename Term>
T pairwise_sum(std::uint64_t begin, std::uint64_t end, const Term& term) {
    if (end - begin <= kPairwiseBlock) {
        T acc{};
        for (std::uint64_t i = begin; i < end; ++i) {
            acc += term(i);
        }
        return acc;
    }
    std::uint64_t mid = begin + (end - begin) / 2;
    return pairwise_sum<T>(begin, mid, term) + pairwise_sum<T>(mid, end, term);
}

void require_same_register(const Register& a, const Register& b, const char* what) {
    if (!(a == b)) {
        throw RegisterMismatch(
            std::string(what) + ": register mismatch (" + std::to_string(a.total()) + " vs " +
            std::to_string(b.total()) + " qubits)");
    }
}

void require_index(const Register& reg, BasisIndex i) {
    if (!reg.contains(i)) {
        throw IndexOutOfRange(
            "basis index " + std::to_string(i) + " out of range for " + std::to_string(reg.total()) + " qubits");
    }
}

std::size_t word_count(const Register& reg) { return static_cast<std::size_t>((reg.dimension() + 63) / 64); }

std::uint64_t tail_mask(const Register& reg) {
    std::uint64_t bits = reg.dimension() % 64;
    return bits == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

bool near_unit(double norm2) { return std::abs(norm2 - 1.0) < kNormalizedTolerance; }

}  // namespace

Register::Register(unsigned data_qubits, unsigned checksum_qubits)
    : data_qubits_(data_qubits), checksum_qubits_(checksum_qubits) {
    if (data_qubits < 1) {
        throw std::invalid_argument("register needs at least one data qubit");
    }
    if (data_qubits > kMaxQubits || checksum_qubits > kMaxQubits - data_qubits) {
        throw std::invalid_argument(
            "register of " + std::to_string(data_qubits + checksum_qubits) + " qubits exceeds the limit of " +
            std::to_string(kMaxQubits));
    }
}

StateVector::StateVector(Register reg, std::vector<Amplitude> amplitudes)
    : reg_(reg), amplitudes_(std::move(amplitudes)), normalized_(false) {
    if (amplitudes_.size() != reg_.dimension()) {
        throw std::invalid_argument(
            "expected " + std::to_string(reg_.dimension()) + " amplitudes, got " + std::to_string(amplitudes_.size()));
    }
    normalized_ = near_unit(norm_squared(*this));
}

StateVector::StateVector(Register reg, std::vector<Amplitude> amplitudes, bool normalized)
    : reg_(reg), amplitudes_(std::move(amplitudes)), normalized_(normalized) {}

StateVector StateVector::basis(Register reg, BasisIndex i) {
    require_index(reg, i);
    StateBuilder out(reg);
    out[i] = 1.0;
    return std::move(out).build_with_flag(true);
}

const Amplitude& StateVector::at(BasisIndex i) const {
    require_index(reg_, i);
    return amplitudes_[i];
}

StateBuilder::StateBuilder(Register reg) : reg_(reg), amplitudes_(reg.dimension()) {}

StateBuilder::StateBuilder(const StateVector& source)
    : reg_(source.reg()), amplitudes_(source.amplitudes().begin(), source.amplitudes().end()) {}

StateVector StateBuilder::build() && {
    StateVector out(reg_, std::move(amplitudes_), false);
    out.normalized_ = near_unit(norm_squared(out));
    return out;
}

StateVector StateBuilder::build_with_flag(bool normalized) && {
    return StateVector(reg_, std::move(amplitudes_), normalized);
}

PhaseMask::PhaseMask(Register reg) : reg_(reg), words_(word_count(reg), 0) {}

PhaseMask::PhaseMask(Register reg, std::span<const BasisIndex> valid) : PhaseMask(reg) {
    for (BasisIndex i : valid) {
        require_index(reg_, i);
        set(i, true);
    }
}

PhaseMask PhaseMask::from_words(Register reg, std::vector<std::uint64_t> words) {
    if (words.size() != word_count(reg)) {
        throw std::invalid_argument("mask word count does not match register");
    }
    words.back() &= tail_mask(reg);
    PhaseMask mask(reg);
    mask.words_ = std::move(words);
    return mask;
}

void PhaseMask::set(BasisIndex i, bool valid) {
    require_index(reg_, i);
    std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (valid) {
        words_[i >> 6] |= bit;
    } else {
        words_[i >> 6] &= ~bit;
    }
}

std::uint64_t PhaseMask::count() const {
    std::uint64_t n = 0;
    for (std::uint64_t w : words_) {
        n += static_cast<std::uint64_t>(std::popcount(w));
    }
    return n;
}

std::vector<BasisIndex> PhaseMask::valid_indices() const {
    std::vector<BasisIndex> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
        for (std::uint64_t w = words_[k]; w != 0; w &= w - 1) {
            out.push_back(k * 64 + static_cast<BasisIndex>(std::countr_zero(w)));
        }
    }
    return out;
}

StateVector uniform_superposition(Register reg) {
    StateBuilder out(reg);
    const double amp = std::pow(2.0, -0.5 * reg.total());
    for (Amplitude& a : out.amplitudes()) {
        a = amp;
    }
    return std::move(out).build_with_flag(true);
}

double norm_squared(const StateVector& psi) {
    auto amps = psi.amplitudes();
    return pairwise_sum<double>(0, amps.size(), [&](std::uint64_t i) { return std::norm(amps[i]); });
}

StateVector normalize(const StateVector& psi, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("normalization tolerance must be positive");
    }
    double norm2 = norm_squared(psi);
    if (norm2 < tol) {
        throw NormCollapse(norm2, tol);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    StateBuilder out(psi);
    for (Amplitude& a : out.amplitudes()) {
        a *= scale;
    }
    return std::move(out).build_with_flag(true);
}

double probability(const StateVector& psi, BasisIndex i) { return std::norm(psi.at(i)); }

BasisIndex sample(const StateVector& psi, RandomStream& rng) {
    double total = 1.0;
    if (!psi.normalized()) {
        total = norm_squared(psi);
        if (total < kDefaultCollapseTolerance) {
            throw NormCollapse(total, kDefaultCollapseTolerance);
        }
    }
    const double target = rng.uniform() * total;
    auto amps = psi.amplitudes();
    double cumulative = 0.0;
    BasisIndex last_nonzero = 0;
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        double p = std::norm(amps[i]);
        if (p == 0.0) {
            continue;
        }
        cumulative += p;
        last_nonzero = i;
        if (target < cumulative) {
            return i;
        }
    }
    // Rounding can leave the cumulative sum just below the target.
    return last_nonzero;
}

Amplitude inner_product(const StateVector& psi, const StateVector& phi) {
    require_same_register(psi.reg(), phi.reg(), "inner product");
    auto a = psi.amplitudes();
    auto b = phi.amplitudes();
    return pairwise_sum<Amplitude>(0, a.size(), [&](std::uint64_t i) { return std::conj(a[i]) * b[i]; });
}

double fidelity(const StateVector& psi, const StateVector& phi) { return std::norm(inner_product(psi, phi)); }

StateVector apply_phase_mask(const StateVector& psi, const PhaseMask& mask) {
    require_same_register(psi.reg(), mask.reg(), "phase mask");
    StateBuilder out(psi);
    auto amps = out.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if (!mask.is_valid(i)) {
            amps[i] = -amps[i];
        }
    }
    return std::move(out).build_with_flag(psi.normalized());
}

StateVector apply_partial_bit_flip(const StateVector& psi, unsigned qubit, double theta) {
    if (qubit >= psi.qubits()) {
        throw IndexOutOfRange(
            "qubit " + std::to_string(qubit) + " out of range for " + std::to_string(psi.qubits()) + " qubits");
    }
    const double c = std::cos(theta);
    const Amplitude is{0.0, std::sin(theta)};
    const BasisIndex stride = BasisIndex{1} << qubit;
    auto in = psi.amplitudes();
    StateBuilder out(psi.reg());
    auto amps = out.amplitudes();
    // Visit each pair (i, i | stride) once, i with the target bit clear.
    for (BasisIndex block = 0; block < in.size(); block += 2 * stride) {
        for (BasisIndex i = block; i < block + stride; ++i) {
            const Amplitude lo = in[i];
            const Amplitude hi = in[i + stride];
            amps[i] = c * lo + is * hi;
            amps[i + stride] = c * hi + is * lo;
        }
    }
    return std::move(out).build_with_flag(psi.normalized());
}

double valid_mass(const StateVector& psi, const PhaseMask& mask) {
    require_same_register(psi.reg(), mask.reg(), "valid mass");
    auto amps = psi.amplitudes();
    return pairwise_sum<double>(
        0, amps.size(), [&](std::uint64_t i) { return mask.is_valid(i) ? std::norm(amps[i]) : 0.0; });
}

std::string to_bitstring(BasisIndex i, unsigned qubits) {
    std::string out(qubits, '0');
    for (unsigned j = 0; j < qubits; ++j) {
        if ((i >> j) & 1U) {
            out[qubits - 1 - j] = '1';
        }
    }
    return out;
}

BasisIndex parse_bitstring(std::string_view bits) {
    if (bits.empty()) {
        throw ParseError(0, "expected a bitstring of 0/1 characters");
    }
    if (bits.size() > kMaxQubits) {
        throw IndexOutOfRange("bitstring wider than " + std::to_string(kMaxQubits) + " qubits");
    }
    BasisIndex value = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        char ch = bits[k];
        if (ch != '0' && ch != '1') {
            throw ParseError(k, "expected '0' or '1'");
        }
        value = (value << 1) | static_cast<BasisIndex>(ch == '1');
    }
    return value;
}

}  // namespace qic
