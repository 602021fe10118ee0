#include "qic/enumeration.hpp"

#include <algorithm>

#include "qic/error.hpp"

namespace qic {

std::uint64_t RunConfig::effective_max_runs(const Register& reg) const {
    return max_runs != 0 ? max_runs : reg.dimension() + 8;
}

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::Exhausted:
            return "Exhausted";
        case Termination::RemnantMeasured:
            return "RemnantMeasured";
        case Termination::RepeatMeasured:
            return "RepeatMeasured";
        case Termination::MaxRunsReached:
            return "MaxRunsReached";
    }
    return "Unknown";
}

std::uint64_t EnumerationReport::productive_runs() const {
    return static_cast<std::uint64_t>(std::count_if(runs.begin(), runs.end(), [](const RunRecord& r) { return r.is_new; }));
}

bool verify(const Predicate& pred, BasisIndex i) { return pred.reg().contains(i) && pred.satisfies_source(i); }

EnumerationReport enumerate_solutions(const Predicate& pred, const Register& reg, const RunConfig& cfg) {
    if (!(pred.reg() == reg)) {
        throw RegisterMismatch("enumeration: predicate is bound to a different register");
    }
    cfg.interference.validate();

    EnumerationReport report;
    report.qubits = reg.total();
    report.config = cfg;
    report.max_runs = cfg.effective_max_runs(reg);
    report.termination = Termination::MaxRunsReached;

    RandomStream rng(cfg.seed);
    const StateVector prepared = uniform_superposition(reg);

    for (std::uint64_t run = 1; run <= report.max_runs; ++run) {
        RunRecord record;
        record.run = run;

        std::optional<StateVector> exposed;
        try {
            exposed = interfere_repeated(prepared, pred.with_exclusions(report.found), cfg.interference);
        } catch (const NormCollapse&) {
            report.runs.push_back(record);
            report.termination = Termination::Exhausted;
            return report;
        }

        const BasisIndex i = sample(*exposed, rng);
        record.measured = i;
        record.verified = verify(pred, i);
        const bool seen = std::find(report.found.begin(), report.found.end(), i) != report.found.end();
        record.is_new = record.verified && !seen;
        report.runs.push_back(record);

        if (!record.verified) {
            report.termination = Termination::RemnantMeasured;
            return report;
        }
        if (seen) {
            report.termination = Termination::RepeatMeasured;
            return report;
        }
        report.found.push_back(i);
    }
    return report;
}

}  // namespace qic
