#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qic/interference.hpp"
#include "qic/predicate.hpp"

namespace qic {

/// "start:end:step" (endpoints inclusive within 1e-12) or a single value.
/// Throws std::invalid_argument on malformed text, step <= 0, or end < start.
std::vector<double> parse_real_range(std::string_view text);
/// "start:end[:step]" or a single value; step defaults to 1.
std::vector<int> parse_int_range(std::string_view text);

struct SweepRow {
    double epsilon = 0.0;
    int passes = 1;
    double predicted_ratio = 0.0;
    double measured_ratio = 0.0;
    double abs_error = 0.0;
};

/// (leakage / (2 - leakage))^passes.
double predicted_leakage_ratio(double leakage, int passes);

/// Invalid/valid amplitude magnitude ratio after interfere_repeated from the
/// uniform state. Throws std::invalid_argument unless the predicate has at
/// least one valid and one invalid index.
double measured_leakage_ratio(const Predicate& pred, const InterferenceConfig& cfg);

/// One row per (epsilon, passes), epsilon-major.
std::vector<SweepRow> leakage_sweep(
    const Predicate& pred, const std::vector<double>& epsilons, const std::vector<int>& passes,
    double collapse_tol = kDefaultCollapseTolerance);

/// Header "epsilon,passes,predicted_ratio,measured_ratio,abs_error" then one
/// line per row, reals with 17 significant digits.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace qic
