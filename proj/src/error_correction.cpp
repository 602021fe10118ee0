#include "qic/error_correction.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qic/error.hpp"

namespace qic {

ChecksumScheme::ChecksumScheme(unsigned data_bits, std::vector<std::vector<unsigned>> groups)
    : data_bits_(data_bits), groups_(std::move(groups)) {
    if (data_bits_ == 0) {
        throw SchemeInvalid("checksum scheme needs at least one data bit");
    }
    if (groups_.empty()) {
        throw SchemeInvalid("checksum scheme needs at least one group");
    }
    std::vector<bool> covered(data_bits_, false);
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        auto& group = groups_[g];
        if (group.empty()) {
            throw SchemeInvalid("checksum group " + std::to_string(g) + " is empty");
        }
        std::sort(group.begin(), group.end());
        group.erase(std::unique(group.begin(), group.end()), group.end());
        for (unsigned bit : group) {
            if (bit >= data_bits_) {
                throw SchemeInvalid(
                    "checksum group " + std::to_string(g) + " references bit " + std::to_string(bit) + " but only " +
                    std::to_string(data_bits_) + " data bits exist");
            }
            covered[bit] = true;
        }
    }
    for (unsigned bit = 0; bit < data_bits_; ++bit) {
        if (!covered[bit]) {
            throw SchemeInvalid("data bit " + std::to_string(bit) + " is not covered by any checksum group");
        }
    }
}

ChecksumScheme ChecksumScheme::global(unsigned data_bits) {
    std::vector<unsigned> all(data_bits);
    for (unsigned b = 0; b < data_bits; ++b) all[b] = b;
    return ChecksumScheme(data_bits, {all});
}

ChecksumScheme ChecksumScheme::parse(std::string_view text, unsigned data_bits) {
    if (text == "global") {
        return global(data_bits);
    }
    constexpr std::string_view prefix = "groups:";
    if (!text.starts_with(prefix)) {
        throw ParseError(0, "expected 'global' or 'groups:<bits>;<bits>...'");
    }
    std::vector<std::vector<unsigned>> groups(1);
    std::size_t pos = prefix.size();
    bool expect_number = true;
    while (pos <= text.size()) {
        if (expect_number) {
            unsigned bit = 0;
            auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), bit);
            if (ec != std::errc()) {
                throw ParseError(pos, "expected a data bit index");
            }
            groups.back().push_back(bit);
            pos = static_cast<std::size_t>(ptr - text.data());
            expect_number = false;
            continue;
        }
        if (pos == text.size()) break;
        char sep = text[pos];
        if (sep == ',') {
            expect_number = true;
        } else if (sep == ';') {
            groups.emplace_back();
            expect_number = true;
        } else {
            throw ParseError(pos, "expected ',' or ';'");
        }
        ++pos;
    }
    if (expect_number) {
        throw ParseError(text.size(), "expected a data bit index");
    }
    return ChecksumScheme(data_bits, std::move(groups));
}

std::uint64_t ChecksumScheme::checksums(BasisIndex x) const {
    std::uint64_t out = 0;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        unsigned parity = 0;
        for (unsigned bit : groups_[g]) parity ^= (x >> bit) & 1U;
        out |= std::uint64_t{parity} << g;
    }
    return out;
}

std::string ChecksumScheme::to_text() const {
    if (groups_.size() == 1 && groups_[0].size() == data_bits_) {
        return "global";
    }
    std::string out = "groups:";
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        if (g) out += ';';
        for (std::size_t k = 0; k < groups_[g].size(); ++k) {
            if (k) out += ',';
            out += std::to_string(groups_[g][k]);
        }
    }
    return out;
}

Predicate checksum_predicate(const ChecksumScheme& scheme) {
    const unsigned n = scheme.data_bits();
    std::optional<BoolExpr> all;
    for (std::size_t g = 0; g < scheme.groups().size(); ++g) {
        BoolExpr parity = BoolExpr::variable(n + static_cast<unsigned>(g));
        for (unsigned bit : scheme.groups()[g]) {
            parity = BoolExpr::binary(BoolExpr::Kind::Xor, std::move(parity), BoolExpr::variable(bit));
        }
        BoolExpr holds = BoolExpr::negation(std::move(parity));
        all = all ? BoolExpr::binary(BoolExpr::Kind::And, std::move(*all), std::move(holds)) : std::move(holds);
    }
    return Predicate(std::move(*all), scheme.full_register());
}

Predicate search_predicate(const Predicate& solution, const ChecksumScheme& scheme) {
    if (!(solution.reg() == Register(scheme.data_bits()))) {
        throw RegisterMismatch("solution predicate must be bound to the scheme's data bits");
    }
    return Predicate::all_of({solution, checksum_predicate(scheme)}, scheme.full_register());
}

StateVector encode(const StateVector& psi_data, const ChecksumScheme& scheme) {
    const unsigned n = scheme.data_bits();
    if (!(psi_data.reg() == Register(n))) {
        throw RegisterMismatch(
            "encode: data state has " + std::to_string(psi_data.qubits()) + " qubits, scheme expects " +
            std::to_string(n));
    }
    StateBuilder out(scheme.full_register());
    for (BasisIndex x = 0; x < psi_data.size(); ++x) {
        out[(scheme.checksums(x) << n) | x] = psi_data[x];
    }
    return std::move(out).build_with_flag(psi_data.normalized());
}

void NoiseModel::validate() const {
    if (!(theta > 0.0 && theta <= std::numbers::pi / 2)) {
        throw std::invalid_argument("noise angle must lie in (0, pi/2], got " + std::to_string(theta));
    }
}

NoisyState inject_noise(const StateVector& psi, const NoiseModel& model, RandomStream& rng) {
    model.validate();
    NoisyState out{psi, {}};
    out.events.reserve(model.events);
    for (unsigned e = 0; e < model.events; ++e) {
        auto qubit = static_cast<unsigned>(rng.below(psi.qubits()));
        out.state = apply_partial_bit_flip(out.state, qubit, model.theta);
        out.events.push_back({qubit, model.theta});
    }
    return out;
}

StateVector correct(const StateVector& psi, const ChecksumScheme& scheme, const InterferenceConfig& cfg) {
    return interfere_repeated(psi, checksum_predicate(scheme), cfg);
}

std::string_view to_string(EccStatus s) { return s == EccStatus::Ok ? "Ok" : "NormCollapse"; }

EccReport ecc_experiment(
    const ChecksumScheme& scheme, const NoiseModel& model, const InterferenceConfig& cfg, std::uint64_t seed,
    std::optional<BasisIndex> data_basis) {
    model.validate();
    cfg.validate();
    const Register data_reg(scheme.data_bits());
    const StateVector data = data_basis ? StateVector::basis(data_reg, *data_basis) : uniform_superposition(data_reg);
    const StateVector ideal = encode(data, scheme);
    const PhaseMask valid = checksum_predicate(scheme).compile_mask();

    RandomStream rng(seed);
    NoisyState noisy = inject_noise(ideal, model, rng);

    EccReport report{
        .status = EccStatus::Ok,
        .valid_mass_before = valid_mass(noisy.state, valid),
        .fidelity_before = fidelity(ideal, noisy.state),
        .valid_mass_after = std::nullopt,
        .fidelity_after = std::nullopt,
        .events = noisy.events,
        .scheme = scheme,
        .noise = model,
        .interference = cfg,
        .seed = seed,
        .data_basis = data_basis,
    };

    try {
        StateVector corrected = correct(noisy.state, scheme, cfg);
        report.valid_mass_after = valid_mass(corrected, valid);
        report.fidelity_after = fidelity(ideal, corrected);
    } catch (const NormCollapse&) {
        report.status = EccStatus::NormCollapse;
    }
    return report;
}

}  // namespace qic
