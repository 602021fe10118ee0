#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qic/enumeration.hpp"
#include "qic/error_correction.hpp"

namespace qic::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// "%.17g"; non-finite values render as "nan"/"inf" and map to null in JSON.
std::string format_real(double value);

/// Serializes with two-space indentation, object keys in insertion order, and
/// every floating-point value printed with 17 significant digits.
std::string dump(const Json& value);

Json config_json(const InterferenceConfig& cfg);
Json config_json(const EnumerationReport& report);
Json config_json(const EccReport& report);

Json results_json(const EnumerationReport& report);
Json results_json(const EccReport& report);

/// Uniform envelope shared by every subcommand. `timing_ms` stays null unless
/// given, which keeps repeated runs byte-identical.
Json envelope(const std::string& command, Json config, Json results, std::optional<double> timing_ms = std::nullopt);

}  // namespace qic::report
