// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "oracles.hpp"
#include "qic/dimacs.hpp"
#include "qic/enumeration.hpp"
#include "qic/error_correction.hpp"
#include "qic/interference.hpp"

using namespace qic;

namespace {

using Clock = std::chrono::steady_clock;

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& why) {
        if (!ok && pass) {
            pass = false;
            detail = why;
        }
    }
};

StateVector random_state(std::mt19937_64& rng, unsigned qubits) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Amplitude> amps(std::uint64_t{1} << qubits);
    for (auto& a : amps) a = {gauss(rng), gauss(rng)};
    return normalize(StateVector(Register(qubits), std::move(amps)));
}

Outcome worked_example() {
    Outcome o;
    const Register reg(3);
    auto start = Clock::now();
    auto out = interfere(uniform_superposition(reg), Predicate::from_indices({1, 3}, reg), InterferenceConfig{});
    double ms = elapsed_ms(start);
    for (BasisIndex i = 0; i < 8; ++i) {
        double p = probability(out, i);
        if (i == 1 || i == 3) {
            o.require(std::abs(p - 0.5) < 1e-12, "P(" + to_bitstring(i, 3) + ") != 0.5");
        } else {
            o.require(p < 1e-12, "P(" + to_bitstring(i, 3) + ") >= 1e-12");
        }
    }
    o.require(ms < 1.0, "runtime " + sci(ms) + " ms");
    if (o.pass) o.detail = "P(001)=P(011)=0.5, runtime " + sci(ms) + " ms";
    return o;
}

Outcome enumeration_oracle() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    auto start = Clock::now();
    int cases = 0;
    for (; cases < 100; ++cases) {
        unsigned m = 3 + static_cast<unsigned>(rng() % 6);
        std::function<bool(std::uint64_t)> truth;
        std::optional<Predicate> pred;
        std::string label;
        if (cases % 2 == 0) {
            auto gen = testing::random_expr(rng, m, 5);
            truth = gen.truth;
            label = gen.text;
            pred = Predicate::from_expr(gen.text, Register(m));
        } else {
            auto gen = testing::random_cnf(rng, m, 1 + static_cast<unsigned>(rng() % 6), 3);
            truth = gen.truth;
            label = gen.dimacs;
            pred = Predicate(parse_dimacs(gen.dimacs), Register(m));
        }
        auto expected = testing::truth_table(truth, m);
        auto report = enumerate_solutions(*pred, Register(m), RunConfig{.seed = rng()});
        auto found = report.found;
        std::sort(found.begin(), found.end());
        o.require(found == expected, "found set differs for " + label);
        o.require(report.productive_runs() == expected.size(), "productive runs differ for " + label);
        o.require(report.termination == Termination::Exhausted, "termination differs for " + label);
    }
    double ms = elapsed_ms(start);
    o.require(ms < 10000.0, "runtime " + sci(ms) + " ms");
    if (o.pass) o.detail = std::to_string(cases) + " instances, " + sci(ms) + " ms";
    return o;
}

Outcome leakage_law() {
    Outcome o;
    const Register reg(3);
    auto pred = Predicate::from_indices({1, 3}, reg);
    double worst = 0;
    for (double eps : {0.1, 0.2, 0.3}) {
        for (int r : {1, 2, 3}) {
            auto out = interfere_repeated(uniform_superposition(reg), pred,
                                          InterferenceConfig{.leakage = eps, .passes = r});
            double err = std::abs(std::abs(out[0]) / std::abs(out[1]) - std::pow(eps / (2 - eps), r));
            worst = std::max(worst, err);
        }
    }
    o.require(worst <= 1e-9, "max error " + sci(worst));
    if (o.pass) o.detail = "9 cases, max error " + sci(worst);
    return o;
}

Outcome ecc_restoration() {
    Outcome o;
    auto scheme = ChecksumScheme::global(3);
    auto mask = checksum_predicate(scheme).compile_mask();
    auto ideal = encode(uniform_superposition(Register(3)), scheme);
    int cases = 0;
    for (double theta : {0.2, 0.5, 1.0}) {
        for (unsigned q = 0; q < ideal.qubits(); ++q, ++cases) {
            auto noisy = apply_partial_bit_flip(ideal, q, theta);
            std::string tag = " (theta " + std::to_string(theta) + ", qubit " + std::to_string(q) + ")";
            o.require(std::abs(valid_mass(noisy, mask) - std::cos(theta) * std::cos(theta)) <= 1e-10,
                      "valid mass before" + tag);
            auto fixed = correct(noisy, scheme, InterferenceConfig{});
            o.require(std::abs(valid_mass(fixed, mask) - 1.0) <= 1e-9, "valid mass after" + tag);
            o.require(std::abs(fidelity(ideal, fixed) - 1.0) <= 1e-9, "fidelity after" + tag);
        }
    }
    if (o.pass) o.detail = std::to_string(cases) + " (theta, qubit) cases";
    return o;
}

Outcome undetectable_error_law() {
    Outcome o;
    const double theta = std::numbers::pi / 6;
    auto scheme = ChecksumScheme::global(3);
    // Basis data state: for the uniform data state the double flip maps the
    // encoded state onto itself and the fidelity is 1.
    auto ideal = encode(StateVector::basis(Register(3), 0), scheme);
    double worst = 0;
    int cases = 0;
    for (unsigned i = 0; i < ideal.qubits(); ++i) {
        for (unsigned j = i + 1; j < ideal.qubits(); ++j, ++cases) {
            auto noisy = apply_partial_bit_flip(apply_partial_bit_flip(ideal, i, theta), j, theta);
            double f = fidelity(ideal, correct(noisy, scheme, InterferenceConfig{}));
            worst = std::max(worst, std::abs(f - 0.9));
        }
    }
    o.require(worst <= 1e-6, "max deviation from 0.9: " + sci(worst));
    if (o.pass) o.detail = std::to_string(cases) + " qubit pairs, max deviation " + sci(worst);
    return o;
}

Outcome property_suite() {
    Outcome o;
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        unsigned m = 1 + static_cast<unsigned>(rng() % 10);
        auto psi = random_state(rng, m);
        PhaseMask mask(psi.reg());
        for (BasisIndex i = 0; i < psi.size(); ++i) mask.set(i, rng() % 2);

        auto marked = apply_phase_mask(psi, mask);
        auto twice = apply_phase_mask(marked, mask);
        for (BasisIndex i = 0; i < psi.size(); ++i) o.require(twice[i] == psi[i], "phase mask involution");
        o.require(std::abs(norm_squared(marked) - 1.0) <= 1e-12, "phase mask norm");
        auto flipped = apply_partial_bit_flip(psi, static_cast<unsigned>(rng() % m), 0.7);
        o.require(std::abs(norm_squared(flipped) - 1.0) <= 1e-12, "partial flip norm");

        if (mask.count() == 0) continue;
        auto once = interfere(psi, mask, InterferenceConfig{});
        auto again = interfere(once, mask, InterferenceConfig{});
        o.require(std::abs(norm_squared(once) - 1.0) <= 1e-12, "interference norm");
        for (BasisIndex i = 0; i < psi.size(); ++i) {
            o.require(std::abs(once[i] - again[i]) <= 1e-12, "projection idempotence");
        }
    }

    auto psi = random_state(rng, 4);
    RandomStream stream(4242);
    std::vector<double> counts(16);
    const int draws = 100000;
    for (int k = 0; k < draws; ++k) counts[sample(psi, stream)] += 1;
    double tv = 0;
    for (BasisIndex i = 0; i < 16; ++i) tv += std::abs(counts[i] / draws - probability(psi, i));
    tv /= 2;
    o.require(tv <= 0.02, "sampling TV " + sci(tv));

    int predicates = 0;
    for (unsigned m = 1; m <= 8; ++m) {
        for (int k = 0; k < 50; ++k, ++predicates) {
            auto gen = testing::random_expr(rng, m, 5);
            auto pred = Predicate::from_expr(gen.text, Register(m));
            auto compiled = pred.compile_mask();
            for (BasisIndex i = 0; i < (BasisIndex{1} << m); ++i) {
                bool expected = gen.truth(i);
                o.require(compiled.is_valid(i) == expected && pred.evaluate(i) == expected, "mask oracle " + gen.text);
            }
            auto cnf = testing::random_cnf(rng, m, 1 + static_cast<unsigned>(rng() % 6), 3);
            auto cnf_pred = Predicate(parse_dimacs(cnf.dimacs), Register(m));
            auto cnf_mask = cnf_pred.compile_mask();
            for (BasisIndex i = 0; i < (BasisIndex{1} << m); ++i) {
                o.require(cnf_mask.is_valid(i) == cnf.truth(i), "cnf mask oracle");
            }
        }
    }
    if (o.pass) {
        o.detail = "sampling TV " + sci(tv) + ", " + std::to_string(2 * predicates) +
                   " predicates checked exhaustively";
    }
    return o;
}

Outcome cli_determinism() {
    Outcome o;
    std::vector<std::vector<std::string>> commands{
        {"demo"},
        {"demo", "--format", "json", "--epsilon", "0.2", "--seed", "5"},
        {"solve", "-m", "6", "--expr", "(b0 | b3) & ~(b1 ^ b5)", "--seed", "42"},
        {"solve", "-m", "3", "--valid", "1,3", "--epsilon", "0.2", "--seed", "42", "--format", "csv"},
        {"sweep", "-m", "3", "--valid", "1,3", "--epsilon", "0.1:0.3:0.1", "--passes", "1:3"},
        {"sweep", "-m", "4", "--expr", "b0 & b2", "--epsilon", "0:0.5:0.25", "--format", "json"},
        {"ecc", "--events", "2", "--theta", "0.5236", "--seed", "9"},
        {"ecc", "-n", "4", "--parity", "groups:0,1;2,3", "--format", "csv", "--seed", "3"},
    };
    for (const auto& args : commands) {
        std::ostringstream a, b, ea, eb;
        int ca = cli::run(args, a, ea);
        int cb = cli::run(args, b, eb);
        o.require(ca == 0 && cb == 0, "nonzero exit for " + args[0]);
        o.require(a.str() == b.str() && !a.str().empty(), "output differs for " + args[0]);
    }
    if (o.pass) o.detail = std::to_string(commands.size()) + " invocations byte-identical";
    return o;
}

Outcome performance() {
    Outcome o;
    const Register reg(22);
    auto pred = Predicate::from_expr("(b0 ^ b7) & (b3 | ~b15) & ~(b21 & b11)", reg);
    auto psi = uniform_superposition(reg);
    auto start = Clock::now();
    auto out = interfere(psi, pred, InterferenceConfig{});
    double ms = elapsed_ms(start);
    o.require(out.size() == (BasisIndex{1} << 22), "size");
    o.require(ms < 1000.0, "runtime " + sci(ms) + " ms");
    if (o.pass) o.detail = "m=22 pass in " + sci(ms) + " ms";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*check)();
    };
    const Criterion criteria[] = {
        {"1 worked example", worked_example},
        {"2 enumeration oracle equivalence", enumeration_oracle},
        {"3 leakage law", leakage_law},
        {"4 error-correction restoration", ecc_restoration},
        {"5 undetectable-error law", undetectable_error_law},
        {"6 property suite", property_suite},
        {"7 determinism", cli_determinism},
        {"8 performance", performance},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
