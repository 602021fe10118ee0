#include "qic/interference.hpp"

#include <stdexcept>
#include <string>

#include "qic/error.hpp"

namespace qic {

void InterferenceConfig::validate() const {
    if (!(leakage >= 0.0 && leakage < 1.0)) {
        throw std::invalid_argument("leakage must lie in [0, 1), got " + std::to_string(leakage));
    }
    if (passes < 1) {
        throw std::invalid_argument("passes must be at least 1, got " + std::to_string(passes));
    }
    if (!(collapse_tol > 0.0)) {
        throw std::invalid_argument("collapse tolerance must be positive");
    }
}

StateVector mark_invalid(const StateVector& psi, const Predicate& pred) {
    return apply_phase_mask(psi, compile_mask(pred, psi.reg()));
}

StateVector interfere(const StateVector& psi, const PhaseMask& mask, const InterferenceConfig& cfg) {
    cfg.validate();
    if (!(psi.reg() == mask.reg())) {
        throw RegisterMismatch("interference: state and mask registers differ");
    }
    const double arm_weight = 1.0 - cfg.leakage;
    StateBuilder sum(psi);
    auto amps = sum.amplitudes();
    // Arm A is psi itself, arm B is the marked copy. Written as a literal sum
    // so that at zero leakage invalid components cancel to exactly zero.
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        const Amplitude marked = mask.is_valid(i) ? amps[i] : -amps[i];
        amps[i] += arm_weight * marked;
    }
    return normalize(std::move(sum).build_with_flag(false), cfg.collapse_tol);
}

StateVector interfere(const StateVector& psi, const Predicate& pred, const InterferenceConfig& cfg) {
    return interfere(psi, compile_mask(pred, psi.reg()), cfg);
}

StateVector interfere_repeated(const StateVector& psi, const Predicate& pred, const InterferenceConfig& cfg) {
    cfg.validate();
    const PhaseMask mask = compile_mask(pred, psi.reg());
    StateVector current = interfere(psi, mask, cfg);
    for (int pass = 1; pass < cfg.passes; ++pass) {
        current = interfere(current, mask, cfg);
    }
    return current;
}

}  // namespace qic
