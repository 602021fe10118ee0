#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "qic/dimacs.hpp"
#include "qic/enumeration.hpp"
#include "qic/error.hpp"
#include "qic/error_correction.hpp"
#include "qic/interference.hpp"
#include "qic/report.hpp"
#include "qic/sweep.hpp"

namespace qic::cli {

namespace {

using report::Json;

// Raised for command-line input the parser accepted but that is unusable.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Raised when an input file cannot be read.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::string format;
    std::string path;
    bool timing = false;
};

struct InterferenceOptions {
    double epsilon = 0.0;
    int passes = 1;
    double collapse_tol = kDefaultCollapseTolerance;

    InterferenceConfig config() const { return {.leakage = epsilon, .passes = passes, .collapse_tol = collapse_tol}; }
};

struct PredicateOptions {
    unsigned qubits = 0;
    std::string expr;
    std::string cnf_path;
    std::string valid;
};

void add_output(CLI::App* cmd, OutputOptions& o, const std::string& default_format,
                const std::vector<std::string>& formats) {
    o.format = default_format;
    cmd->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    cmd->add_option("--output,-o", o.path, "Write the report to this file instead of standard output");
    cmd->add_flag("--timing", o.timing, "Record wall-clock time in the JSON envelope (breaks byte determinism)");
}

void add_interference(CLI::App* cmd, InterferenceOptions& o, bool epsilon_option = true) {
    if (epsilon_option) {
        cmd->add_option("--epsilon", o.epsilon, "Arm imbalance leakage in [0, 1); 0 cancels perfectly")
            ->capture_default_str();
        cmd->add_option("--passes", o.passes, "Interference passes before each measurement (>= 1)")
            ->capture_default_str();
    }
    cmd->add_option("--collapse-tol", o.collapse_tol, "Squared-norm floor that counts as full cancellation")
        ->capture_default_str();
}

void add_predicate(CLI::App* cmd, PredicateOptions& o) {
    cmd->add_option("--qubits,-m", o.qubits, "Register width m (defaults to the CNF variable count)")
        ->check(CLI::Range(1U, kMaxMaskQubits));
    auto* expr = cmd->add_option("--expr", o.expr, "Boolean expression over b0..b{m-1}, e.g. \"b0 & ~b2\"");
    auto* cnf = cmd->add_option("--cnf", o.cnf_path, "DIMACS CNF file");
    auto* valid = cmd->add_option("--valid", o.valid, "Comma-separated list of valid basis indices, e.g. 1,3");
    expr->excludes(cnf)->excludes(valid);
    cnf->excludes(valid);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<BasisIndex> parse_index_list(const std::string& text) {
    std::vector<BasisIndex> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        BasisIndex value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
            throw ParseError(pos, "expected a decimal basis index in --valid list");
        }
        out.push_back(value);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

Predicate build_predicate(const PredicateOptions& o) {
    const int sources = !o.expr.empty() + !o.cnf_path.empty() + !o.valid.empty();
    if (sources != 1) {
        throw UsageError("exactly one of --expr, --cnf, --valid is required");
    }
    if (!o.cnf_path.empty()) {
        CnfFormula cnf = parse_dimacs(read_file(o.cnf_path));
        unsigned m = o.qubits != 0 ? o.qubits : std::max(cnf.variable_count, 1U);
        return Predicate(std::move(cnf), Register(m));
    }
    if (o.qubits == 0) {
        throw UsageError("--qubits is required with --expr and --valid");
    }
    const Register reg(o.qubits);
    if (!o.expr.empty()) {
        return Predicate::from_expr(o.expr, reg);
    }
    return Predicate::from_indices(parse_index_list(o.valid), reg);
}

class Emitter {
  public:
    Emitter(const OutputOptions& opts, std::ostream& out) : opts_(opts), out_(out), start_(Clock::now()) {}

    std::optional<double> timing() const {
        if (!opts_.timing) return std::nullopt;
        return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    }

    void emit(const std::string& text) const {
        if (opts_.path.empty()) {
            out_ << text;
            out_.flush();
            return;
        }
        std::ofstream file(opts_.path, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw UsageError("cannot write '" + opts_.path + "'");
        }
        file << text;
    }

  private:
    using Clock = std::chrono::steady_clock;
    const OutputOptions& opts_;
    std::ostream& out_;
    Clock::time_point start_;
};

std::string csv_bool(bool b) { return b ? "true" : "false"; }

Json amplitude_rows(const StateVector& psi) {
    Json rows = Json::array();
    for (BasisIndex i = 0; i < psi.size(); ++i) {
        rows.push_back(
            Json{{"basis", to_bitstring(i, psi.qubits())}, {"re", psi[i].real()}, {"im", psi[i].imag()}});
    }
    return rows;
}

Json probability_rows(const StateVector& psi) {
    Json rows = Json::array();
    for (BasisIndex i = 0; i < psi.size(); ++i) {
        rows.push_back(Json{{"basis", to_bitstring(i, psi.qubits())}, {"probability", probability(psi, i)}});
    }
    return rows;
}

int run_demo(const InterferenceOptions& io, std::uint64_t seed, const OutputOptions& oo, std::ostream& out) {
    Emitter emitter(oo, out);
    const Register reg(3);
    const Predicate pred = Predicate::from_indices({0b001, 0b011}, reg);
    const InterferenceConfig cfg = io.config();

    const StateVector uniform = uniform_superposition(reg);
    const StateVector marked = mark_invalid(uniform, pred);
    const StateVector exposed = interfere_repeated(uniform, pred, cfg);
    const EnumerationReport enumeration = enumerate_solutions(pred, reg, RunConfig{seed, cfg, 0});

    if (oo.format == "json") {
        Json config = report::config_json(enumeration);
        config["valid"] = Json::array({"001", "011"});
        Json results;
        results["uniform"] = amplitude_rows(uniform);
        results["marked"] = amplitude_rows(marked);
        results["distribution"] = probability_rows(exposed);
        results["enumeration"] = report::results_json(enumeration);
        emitter.emit(report::dump(report::envelope("demo", std::move(config), std::move(results), emitter.timing())));
        return kSuccess;
    }

    std::ostringstream text;
    text << "uniform superposition, m=3\n";
    for (BasisIndex i = 0; i < uniform.size(); ++i) {
        text << "  |" << to_bitstring(i, 3) << ">  " << report::format_real(uniform[i].real()) << '\n';
    }
    text << "invalid components phase-inverted (valid: 001, 011)\n";
    for (BasisIndex i = 0; i < marked.size(); ++i) {
        text << "  |" << to_bitstring(i, 3) << ">  " << report::format_real(marked[i].real()) << '\n';
    }
    text << "after interference (epsilon=" << report::format_real(cfg.leakage) << ", passes=" << cfg.passes << ")\n";
    for (BasisIndex i = 0; i < exposed.size(); ++i) {
        text << "  P(" << to_bitstring(i, 3) << ") = " << report::format_real(probability(exposed, i)) << '\n';
    }
    text << "enumeration (seed " << seed << ")\n";
    for (const RunRecord& r : enumeration.runs) {
        text << "  run " << r.run << ": ";
        if (!r.measured) {
            text << "state cancelled\n";
            continue;
        }
        text << "measured " << to_bitstring(*r.measured, 3) << (r.verified ? " verified" : " not a solution")
             << (r.is_new ? " new" : "") << '\n';
    }
    text << "found:";
    for (BasisIndex i : enumeration.found) text << ' ' << to_bitstring(i, 3);
    text << "\ntermination: " << to_string(enumeration.termination) << '\n';
    emitter.emit(text.str());
    return kSuccess;
}

int run_solve(const PredicateOptions& po, const InterferenceOptions& io, std::uint64_t seed, std::uint64_t max_runs,
              const OutputOptions& oo, std::ostream& out) {
    Emitter emitter(oo, out);
    const Predicate pred = build_predicate(po);
    const RunConfig cfg{seed, io.config(), max_runs};
    const EnumerationReport result = enumerate_solutions(pred, pred.reg(), cfg);

    if (oo.format == "csv") {
        std::string csv = "run,measured,verified,new\n";
        for (const RunRecord& r : result.runs) {
            csv += std::to_string(r.run) + ',' + (r.measured ? to_bitstring(*r.measured, result.qubits) : "") + ',' +
                   csv_bool(r.verified) + ',' + csv_bool(r.is_new) + '\n';
        }
        emitter.emit(csv);
        return kSuccess;
    }
    Json config = report::config_json(result);
    config["predicate"] = pred.describe();
    emitter.emit(
        report::dump(report::envelope("solve", std::move(config), report::results_json(result), emitter.timing())));
    return kSuccess;
}

int run_sweep(const PredicateOptions& po, const std::string& eps_range, const std::string& pass_range,
              const InterferenceOptions& io, const OutputOptions& oo, std::ostream& out) {
    Emitter emitter(oo, out);
    const std::vector<double> epsilons = parse_real_range(eps_range);
    const std::vector<int> passes = parse_int_range(pass_range);
    const Predicate pred = build_predicate(po);
    const std::vector<SweepRow> rows = leakage_sweep(pred, epsilons, passes, io.collapse_tol);

    if (oo.format == "csv") {
        emitter.emit(sweep_csv(rows));
        return kSuccess;
    }
    Json config;
    config["qubits"] = pred.reg().total();
    config["predicate"] = pred.describe();
    config["epsilon"] = eps_range;
    config["passes"] = pass_range;
    config["collapse_tol"] = io.collapse_tol;
    Json results = Json::array();
    for (const SweepRow& r : rows) {
        results.push_back(Json{{"epsilon", r.epsilon},
                               {"passes", r.passes},
                               {"predicted_ratio", r.predicted_ratio},
                               {"measured_ratio", r.measured_ratio},
                               {"abs_error", r.abs_error}});
    }
    emitter.emit(report::dump(report::envelope("sweep", std::move(config), std::move(results), emitter.timing())));
    return kSuccess;
}

struct EccOptions {
    unsigned data_qubits = 3;
    std::string parity = "global";
    double theta = 0.5;
    unsigned events = 1;
    std::string data_state = "uniform";
};

int run_ecc(const EccOptions& eo, const InterferenceOptions& io, std::uint64_t seed, const OutputOptions& oo,
            std::ostream& out) {
    Emitter emitter(oo, out);
    const ChecksumScheme scheme = ChecksumScheme::parse(eo.parity, eo.data_qubits);
    if (eo.data_qubits + scheme.checksum_bits() > kMaxMaskQubits) {
        throw UsageError("data and checksum qubits together exceed " + std::to_string(kMaxMaskQubits));
    }
    std::optional<BasisIndex> basis;
    if (eo.data_state != "uniform") {
        if (eo.data_state.size() != eo.data_qubits) {
            throw ParseError(0, "--data-state must be 'uniform' or a bitstring of " + std::to_string(eo.data_qubits) +
                                    " bits");
        }
        basis = parse_bitstring(eo.data_state);
    }
    const EccReport result =
        ecc_experiment(scheme, NoiseModel{.events = eo.events, .theta = eo.theta}, io.config(), seed, basis);

    if (oo.format == "csv") {
        auto opt = [](const std::optional<double>& v) { return v ? report::format_real(*v) : std::string(); };
        std::string csv = "status,valid_mass_before,valid_mass_after,fidelity_before,fidelity_after,events\n";
        std::string events;
        for (std::size_t k = 0; k < result.events.size(); ++k) {
            events += (k ? ";" : "") + std::to_string(result.events[k].qubit);
        }
        csv += std::string(to_string(result.status)) + ',' + report::format_real(result.valid_mass_before) + ',' +
               opt(result.valid_mass_after) + ',' + report::format_real(result.fidelity_before) + ',' +
               opt(result.fidelity_after) + ',' + events + '\n';
        emitter.emit(csv);
        return kSuccess;
    }
    emitter.emit(report::dump(
        report::envelope("ecc", report::config_json(result), report::results_json(result), emitter.timing())));
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum interference computer simulator: phase marking, two-arm interference, solution "
                 "enumeration and checksum error removal.",
                 "qic"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    InterferenceOptions io;
    OutputOptions demo_out, solve_out, sweep_out, ecc_out;
    PredicateOptions po;
    std::uint64_t max_runs = 0;
    std::string eps_range;
    std::string pass_range = "1";
    EccOptions eo;

    auto* demo = app.add_subcommand("demo", "Reproduce the three-qubit worked example (valid 001 and 011)");
    add_interference(demo, io);
    demo->add_option("--seed", seed, "Seed of the measurement stream")->capture_default_str();
    add_output(demo, demo_out, "text", {"text", "json"});

    auto* solve = app.add_subcommand("solve", "Enumerate all solutions of a predicate");
    add_predicate(solve, po);
    add_interference(solve, io);
    solve->add_option("--seed", seed, "Seed of the measurement stream")->capture_default_str();
    solve->add_option("--max-runs", max_runs, "Bound on prepare/measure runs (0 selects 2^m + 8)")
        ->capture_default_str();
    add_output(solve, solve_out, "json", {"json", "csv"});

    auto* sweep = app.add_subcommand("sweep", "Compare measured and predicted leakage ratios over (epsilon, passes)");
    add_predicate(sweep, po);
    add_interference(sweep, io, false);
    sweep->add_option("--epsilon", eps_range, "Leakage range start:end:step or a single value")->required();
    sweep->add_option("--passes", pass_range, "Pass range start:end[:step] or a single value")->capture_default_str();
    add_output(sweep, sweep_out, "csv", {"csv", "json"});

    auto* ecc = app.add_subcommand("ecc", "Checksum encoding, partial-flip noise and interference correction");
    ecc->add_option("--data-qubits,-n", eo.data_qubits, "Number of data qubits")
        ->check(CLI::Range(1U, kMaxMaskQubits - 1))
        ->capture_default_str();
    ecc->add_option("--parity", eo.parity, "Checksum scheme: 'global' or 'groups:0,1;2,3'")->capture_default_str();
    ecc->add_option("--theta", eo.theta, "Partial flip angle per event, in (0, pi/2]")->capture_default_str();
    ecc->add_option("--events", eo.events, "Number of noise events")->capture_default_str();
    ecc->add_option("--data-state", eo.data_state, "'uniform' or a data bitstring to encode")->capture_default_str();
    ecc->add_option("--seed", seed, "Seed of the noise stream")->capture_default_str();
    add_interference(ecc, io);
    add_output(ecc, ecc_out, "json", {"json", "csv"});

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (demo->parsed()) return run_demo(io, seed, demo_out, out);
        if (solve->parsed()) return run_solve(po, io, seed, max_runs, solve_out, out);
        if (sweep->parsed()) return run_sweep(po, eps_range, pass_range, io, sweep_out, out);
        if (ecc->parsed()) return run_ecc(eo, io, seed, ecc_out, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const UnboundVariable& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const SchemeInvalid& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const NormCollapse& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const IndexOutOfRange& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kUsageError;
}

}  // namespace qic::cli
