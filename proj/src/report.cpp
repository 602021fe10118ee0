#include "qic/report.hpp"

#include <cmath>
#include <cstdio>

namespace qic::report {

std::string format_real(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

void write(const Json& value, std::string& out, int depth) {
    auto newline = [&](int d) {
        out += '\n';
        out.append(static_cast<std::size_t>(2 * d), ' ');
    };
    switch (value.type()) {
        case Json::value_t::number_float: {
            double x = value.get<double>();
            out += std::isfinite(x) ? format_real(x) : "null";
            return;
        }
        case Json::value_t::array: {
            if (value.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& item : value) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                write(item, out, depth + 1);
            }
            newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::object: {
            if (value.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (const auto& [key, item] : value.items()) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(key).dump();
                out += ": ";
                write(item, out, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        default:
            out += value.dump();
    }
}

Json bitstring_or_null(const std::optional<BasisIndex>& i, unsigned qubits) {
    return i ? Json(to_bitstring(*i, qubits)) : Json(nullptr);
}

}  // namespace

std::string dump(const Json& value) {
    std::string out;
    write(value, out, 0);
    out += '\n';
    return out;
}

Json config_json(const InterferenceConfig& cfg) {
    Json j;
    j["epsilon"] = cfg.leakage;
    j["passes"] = cfg.passes;
    j["collapse_tol"] = cfg.collapse_tol;
    return j;
}

Json config_json(const EnumerationReport& report) {
    Json j;
    j["qubits"] = report.qubits;
    j["seed"] = report.config.seed;
    j.update(config_json(report.config.interference));
    j["max_runs"] = report.max_runs;
    return j;
}

Json config_json(const EccReport& report) {
    Json j;
    j["data_qubits"] = report.scheme.data_bits();
    j["checksum_qubits"] = report.scheme.checksum_bits();
    j["parity"] = report.scheme.to_text();
    j["data_state"] = report.data_basis ? to_bitstring(*report.data_basis, report.scheme.data_bits()) : "uniform";
    j["theta"] = report.noise.theta;
    j["events"] = report.noise.events;
    j["seed"] = report.seed;
    j.update(config_json(report.interference));
    return j;
}

Json results_json(const EnumerationReport& report) {
    Json j;
    Json found = Json::array();
    for (BasisIndex i : report.found) found.push_back(to_bitstring(i, report.qubits));
    j["found"] = std::move(found);
    j["termination"] = std::string(to_string(report.termination));
    j["productive_runs"] = report.productive_runs();
    j["total_runs"] = report.runs.size();
    Json runs = Json::array();
    for (const RunRecord& r : report.runs) {
        Json row;
        row["run"] = r.run;
        row["measured"] = bitstring_or_null(r.measured, report.qubits);
        row["verified"] = r.verified;
        row["new"] = r.is_new;
        runs.push_back(std::move(row));
    }
    j["runs"] = std::move(runs);
    return j;
}

Json results_json(const EccReport& report) {
    Json j;
    j["status"] = std::string(to_string(report.status));
    j["valid_mass_before"] = report.valid_mass_before;
    j["valid_mass_after"] = report.valid_mass_after ? Json(*report.valid_mass_after) : Json(nullptr);
    j["fidelity_before"] = report.fidelity_before;
    j["fidelity_after"] = report.fidelity_after ? Json(*report.fidelity_after) : Json(nullptr);
    Json events = Json::array();
    for (const NoiseEvent& e : report.events) {
        events.push_back(Json{{"qubit", e.qubit}, {"theta", e.theta}});
    }
    j["events"] = std::move(events);
    return j;
}

Json envelope(const std::string& command, Json config, Json results, std::optional<double> timing_ms) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["config"] = std::move(config);
    j["results"] = std::move(results);
    j["timing_ms"] = timing_ms ? Json(*timing_ms) : Json(nullptr);
    return j;
}

}  // namespace qic::report
