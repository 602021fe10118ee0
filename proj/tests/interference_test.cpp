#include "qic/interference.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "qic/error.hpp"

using namespace qic;

namespace {

const Register kThree(3);

Predicate worked_predicate() { return Predicate::from_indices({1, 3}, kThree); }

StateVector random_state(std::mt19937_64& rng, unsigned qubits) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Amplitude> amps(std::uint64_t{1} << qubits);
    for (auto& a : amps) a = {gauss(rng), gauss(rng)};
    return normalize(StateVector(Register(qubits), std::move(amps)));
}

}  // namespace

TEST(InterferenceConfig, validation) {
    EXPECT_NO_THROW((InterferenceConfig{}.validate()));
    EXPECT_THROW((InterferenceConfig{.leakage = 1.0}.validate()), std::invalid_argument);
    EXPECT_THROW((InterferenceConfig{.leakage = -0.1}.validate()), std::invalid_argument);
    EXPECT_THROW((InterferenceConfig{.passes = 0}.validate()), std::invalid_argument);
    EXPECT_THROW((InterferenceConfig{.collapse_tol = 0.0}.validate()), std::invalid_argument);
}

TEST(MarkInvalid, worked_signs_identity_and_involution) {
    auto psi = uniform_superposition(kThree);
    auto marked = mark_invalid(psi, worked_predicate());
    const int signs[8] = {-1, 1, -1, 1, -1, -1, -1, -1};
    for (BasisIndex i = 0; i < 8; ++i) EXPECT_EQ(marked[i], psi[i] * double(signs[i]));

    auto same = mark_invalid(psi, Predicate::from_expr("1", kThree));
    for (BasisIndex i = 0; i < 8; ++i) EXPECT_EQ(same[i], psi[i]);

    auto twice = mark_invalid(marked, worked_predicate());
    for (BasisIndex i = 0; i < 8; ++i) EXPECT_EQ(twice[i], psi[i]);
}

TEST(Interfere, exposes_solutions_at_zero_leakage) {
    auto out = interfere(uniform_superposition(kThree), worked_predicate(), InterferenceConfig{});
    for (BasisIndex i = 0; i < 8; ++i) {
        double expected = (i == 1 || i == 3) ? 0.5 : 0.0;
        EXPECT_NEAR(probability(out, i), expected, 1e-12);
        if (expected == 0.0) EXPECT_EQ(probability(out, i), 0.0);
    }
    EXPECT_TRUE(out.normalized());
}

TEST(Interfere, all_invalid_collapses) {
    EXPECT_THROW(interfere(uniform_superposition(kThree), Predicate::from_expr("0", kThree), InterferenceConfig{}),
                 NormCollapse);
}

TEST(Interfere, leakage_point_two_matches_hand_evaluation) {
    // Independent evaluation: the two arms summed element by element.
    const double a = 1 / std::sqrt(8.0);
    const int signs[8] = {-1, 1, -1, 1, -1, -1, -1, -1};
    double summed[8];
    double total = 0;
    for (int i = 0; i < 8; ++i) {
        summed[i] = a + 0.8 * signs[i] * a;
        total += summed[i] * summed[i];
    }
    const double p_valid = summed[1] * summed[1] / total;
    const double p_invalid = summed[0] * summed[0] / total;
    // Closed form: 1.8^2 / (2 * 1.8^2 + 6 * 0.2^2) = 3.24 / 6.72.
    ASSERT_NEAR(p_valid, 3.24 / 6.72, 1e-15);
    ASSERT_NEAR(p_invalid, 0.04 / 6.72, 1e-15);
    ASSERT_NEAR(p_valid, 0.4821429, 1e-7);
    ASSERT_NEAR(p_invalid, 0.0059524, 1e-7);

    auto out = interfere(uniform_superposition(kThree), worked_predicate(), InterferenceConfig{.leakage = 0.2});
    for (BasisIndex i = 0; i < 8; ++i) {
        EXPECT_NEAR(probability(out, i), (i == 1 || i == 3) ? p_valid : p_invalid, 1e-14);
    }
}

TEST(InterfereRepeated, single_pass_and_zero_leakage_idempotence) {
    auto psi = uniform_superposition(kThree);
    auto once = interfere(psi, worked_predicate(), InterferenceConfig{.leakage = 0.3});
    auto r1 = interfere_repeated(psi, worked_predicate(), InterferenceConfig{.leakage = 0.3, .passes = 1});
    for (BasisIndex i = 0; i < 8; ++i) EXPECT_EQ(once[i], r1[i]);

    auto single = interfere(psi, worked_predicate(), InterferenceConfig{});
    auto five = interfere_repeated(psi, worked_predicate(), InterferenceConfig{.passes = 5});
    for (BasisIndex i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(five[i] - single[i]), 0.0, 1e-12);
}

TEST(InterfereRepeated, two_passes_square_the_ratio) {
    auto out = interfere_repeated(uniform_superposition(kThree), worked_predicate(),
                                  InterferenceConfig{.leakage = 0.2, .passes = 2});
    EXPECT_NEAR(std::abs(out[0]) / std::abs(out[1]), 1.0 / 81.0, 1e-12);
    EXPECT_NEAR(1.0 / 81.0, 0.0123457, 1e-7);
}

TEST(InterfereRepeated, leakage_law) {
    for (double eps : {0.1, 0.2, 0.3}) {
        for (int r : {1, 2, 3}) {
            auto out = interfere_repeated(uniform_superposition(kThree), worked_predicate(),
                                          InterferenceConfig{.leakage = eps, .passes = r});
            double ratio = std::abs(out[0]) / std::abs(out[1]);
            EXPECT_NEAR(ratio, std::pow(eps / (2 - eps), r), 1e-9) << eps << " " << r;
        }
    }
}

TEST(Interfere, projection_properties_on_random_states) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 100; ++trial) {
        unsigned m = 1 + static_cast<unsigned>(rng() % 10);
        auto psi = random_state(rng, m);
        auto gen = qic::testing::random_expr(rng, m, 4);
        auto pred = Predicate::from_expr(gen.text, Register(m));
        auto mask = pred.compile_mask();
        if (valid_mass(psi, mask) < 1e-6) continue;

        auto out = interfere(psi, pred, InterferenceConfig{});
        EXPECT_NEAR(norm_squared(out), 1.0, 1e-9);

        // Restriction of psi to the valid set, normalized.
        std::vector<Amplitude> restricted(psi.size());
        for (BasisIndex i = 0; i < psi.size(); ++i) restricted[i] = mask.is_valid(i) ? psi[i] : 0.0;
        auto expected = normalize(StateVector(psi.reg(), restricted));

        // Marked-arm form: normalize(psi + mark_invalid(psi)).
        auto marked = mark_invalid(psi, pred);
        std::vector<Amplitude> sum(psi.size());
        for (BasisIndex i = 0; i < psi.size(); ++i) sum[i] = psi[i] + marked[i];
        auto two_arm = normalize(StateVector(psi.reg(), sum));

        auto again = interfere(out, pred, InterferenceConfig{});
        for (BasisIndex i = 0; i < psi.size(); ++i) {
            if (!mask.is_valid(i)) ASSERT_EQ(out[i], Amplitude(0.0));
            ASSERT_NEAR(std::abs(out[i] - expected[i]), 0.0, 1e-12);
            ASSERT_NEAR(std::abs(out[i] - two_arm[i]), 0.0, 1e-12);
            ASSERT_NEAR(std::abs(out[i] - again[i]), 0.0, 1e-12);
        }
    }
}

TEST(Interfere, leaky_output_stays_normalized) {
    std::mt19937_64 rng(66);
    for (int trial = 0; trial < 50; ++trial) {
        auto psi = random_state(rng, 6);
        auto pred = Predicate::from_expr(qic::testing::random_expr(rng, 6, 4).text, Register(6));
        auto out = interfere_repeated(psi, pred, InterferenceConfig{.leakage = 0.25, .passes = 3});
        EXPECT_NEAR(norm_squared(out), 1.0, 1e-9);
    }
}

TEST(Interfere, register_mismatch) {
    EXPECT_THROW(interfere(uniform_superposition(Register(2)), worked_predicate(), InterferenceConfig{}),
                 RegisterMismatch);
}
