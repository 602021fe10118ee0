#pragma once

#include "qic/predicate.hpp"
#include "qic/state_vector.hpp"

namespace qic {

/// Two-arm interference settings.
struct InterferenceConfig {
    /// Arm imbalance: the marked arm is weighted (1 - leakage). 0 is perfect
    /// cancellation. Must lie in [0, 1).
    double leakage = 0.0;
    /// Interference passes applied before a measurement. At least 1.
    int passes = 1;
    /// Squared-norm floor below which the summed arms count as cancelled.
    double collapse_tol = kDefaultCollapseTolerance;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// Phase-marks the invalid components: amp_i -> -amp_i unless pred(i).
StateVector mark_invalid(const StateVector& psi, const Predicate& pred);

/// Sums an unmarked arm with a marked arm weighted (1 - leakage), then
/// renormalizes. Valid components scale by (2 - leakage), invalid ones by
/// leakage. Throws NormCollapse when the summed arms have squared norm below
/// cfg.collapse_tol. `cfg.passes` is ignored here.
StateVector interfere(const StateVector& psi, const Predicate& pred, const InterferenceConfig& cfg);

/// Mask-level form of interfere, for callers that reuse a compiled mask.
StateVector interfere(const StateVector& psi, const PhaseMask& mask, const InterferenceConfig& cfg);

/// cfg.passes successive interference passes on the current state.
StateVector interfere_repeated(const StateVector& psi, const Predicate& pred, const InterferenceConfig& cfg);

}  // namespace qic
