#include "qic/sweep.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "qic/report.hpp"

namespace qic {

namespace {

constexpr double kRangeSlack = 1e-12;

std::vector<std::string_view> split_colon(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        std::size_t colon = text.find(':', start);
        parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
        if (colon == std::string_view::npos) return parts;
        start = colon + 1;
    }
}

template <typename T>
T parse_number(std::string_view text, std::string_view whole) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("malformed range '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

std::vector<double> parse_real_range(std::string_view text) {
    auto parts = split_colon(text);
    if (parts.size() == 1) {
        return {parse_number<double>(parts[0], text)};
    }
    if (parts.size() != 3) {
        throw std::invalid_argument("range '" + std::string(text) + "' must be a value or start:end:step");
    }
    const double start = parse_number<double>(parts[0], text);
    const double end = parse_number<double>(parts[1], text);
    const double step = parse_number<double>(parts[2], text);
    if (!std::isfinite(start) || !std::isfinite(end) || !(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("range '" + std::string(text) + "' needs finite bounds and a positive step");
    }
    if (end < start) {
        throw std::invalid_argument("range '" + std::string(text) + "' ends before it starts");
    }
    std::vector<double> values;
    for (long long k = 0;; ++k) {
        double v = start + static_cast<double>(k) * step;
        if (v > end + kRangeSlack) break;
        values.push_back(v);
        if (values.size() > 1000000) {
            throw std::invalid_argument("range '" + std::string(text) + "' has too many points");
        }
    }
    return values;
}

std::vector<int> parse_int_range(std::string_view text) {
    auto parts = split_colon(text);
    if (parts.size() > 3) {
        throw std::invalid_argument("range '" + std::string(text) + "' must be a value or start:end[:step]");
    }
    const int start = parse_number<int>(parts[0], text);
    if (parts.size() == 1) return {start};
    const int end = parse_number<int>(parts[1], text);
    const int step = parts.size() == 3 ? parse_number<int>(parts[2], text) : 1;
    if (step <= 0 || end < start) {
        throw std::invalid_argument("range '" + std::string(text) + "' needs end >= start and a positive step");
    }
    std::vector<int> values;
    for (long long v = start; v <= end; v += step) values.push_back(static_cast<int>(v));
    return values;
}

double predicted_leakage_ratio(double leakage, int passes) { return std::pow(leakage / (2.0 - leakage), passes); }

double measured_leakage_ratio(const Predicate& pred, const InterferenceConfig& cfg) {
    const PhaseMask mask = pred.compile_mask();
    const std::uint64_t valid_count = mask.count();
    if (valid_count == 0 || valid_count == pred.reg().dimension()) {
        throw std::invalid_argument("leakage ratio needs at least one valid and one invalid index");
    }
    BasisIndex valid = 0;
    while (!mask.is_valid(valid)) ++valid;
    BasisIndex invalid = 0;
    while (mask.is_valid(invalid)) ++invalid;
    StateVector out = interfere_repeated(uniform_superposition(pred.reg()), pred, cfg);
    return std::abs(out[invalid]) / std::abs(out[valid]);
}

std::vector<SweepRow> leakage_sweep(
    const Predicate& pred, const std::vector<double>& epsilons, const std::vector<int>& passes, double collapse_tol) {
    std::vector<SweepRow> rows;
    for (double eps : epsilons) {
        for (int r : passes) {
            InterferenceConfig cfg{.leakage = eps, .passes = r, .collapse_tol = collapse_tol};
            SweepRow row;
            row.epsilon = eps;
            row.passes = r;
            row.predicted_ratio = predicted_leakage_ratio(eps, r);
            row.measured_ratio = measured_leakage_ratio(pred, cfg);
            row.abs_error = std::abs(row.measured_ratio - row.predicted_ratio);
            rows.push_back(row);
        }
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "epsilon,passes,predicted_ratio,measured_ratio,abs_error\n";
    for (const SweepRow& row : rows) {
        out += report::format_real(row.epsilon) + ',' + std::to_string(row.passes) + ',' +
               report::format_real(row.predicted_ratio) + ',' + report::format_real(row.measured_ratio) + ',' +
               report::format_real(row.abs_error) + '\n';
    }
    return out;
}

}  // namespace qic
