#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qic/interference.hpp"
#include "qic/predicate.hpp"

namespace qic {

struct RunConfig {
    std::uint64_t seed = 0;
    InterferenceConfig interference;
    /// Unconditional bound on prepare/measure runs; 0 selects 2^m + 8.
    std::uint64_t max_runs = 0;

    /// max_runs, or its default for register `reg`.
    std::uint64_t effective_max_runs(const Register& reg) const;
};

enum class Termination { Exhausted, RemnantMeasured, RepeatMeasured, MaxRunsReached };

std::string_view to_string(Termination t);

struct RunRecord {
    std::uint64_t run = 0;
    /// Empty when the run ended in a norm collapse before measuring.
    std::optional<BasisIndex> measured;
    bool verified = false;
    bool is_new = false;

    bool operator==(const RunRecord&) const = default;
};

struct EnumerationReport {
    unsigned qubits = 0;
    std::vector<BasisIndex> found;
    std::vector<RunRecord> runs;
    Termination termination = Termination::Exhausted;
    RunConfig config;
    std::uint64_t max_runs = 0;

    /// Runs that added a new solution.
    std::uint64_t productive_runs() const;
};

/// Classical check against the original source, ignoring exclusions.
bool verify(const Predicate& pred, BasisIndex i);

/// Prepare, interfere (with found solutions excluded), measure, verify, and
/// repeat until the state cancels completely, a remnant or repeat is
/// measured, or max_runs is reached. Each run prepares a fresh uniform state
/// and all runs share one random stream seeded from cfg.seed.
EnumerationReport enumerate_solutions(const Predicate& pred, const Register& reg, const RunConfig& cfg);

}  // namespace qic
