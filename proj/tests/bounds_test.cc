// Copyright 2026 The trapver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trapver/bounds.hpp"

#include <bit>
#include <cmath>

#include "gtest/gtest.h"

using namespace trapver;

namespace {

// Exact trap-pass probability over all placements of kappa even and kappa odd trap
// rounds among 2 kappa + 1 slots, when slots [0, xi) are attacked on an even site
// and slots [xi, lambda) on an odd site.
Rational brute_force_trap_fidelity(AttackClass a) {
    const int n = 2 * a.kappa + 1;
    const uint32_t even_hit = (1u << a.xi) - 1;
    const uint32_t odd_hit = ((1u << a.lambda) - 1) & ~even_hit;
    int64_t total = 0, pass = 0;
    for (uint32_t e = 0; e < (1u << n); e++) {
        if (std::popcount(e) != a.kappa) {
            continue;
        }
        for (uint32_t o = 0; o < (1u << n); o++) {
            if (std::popcount(o) != a.kappa || (o & e)) {
                continue;
            }
            total++;
            pass += !(e & even_hit) && !(o & odd_hit);
        }
    }
    return Rational(pass, total);
}

// Target survives a Z attack only when the target slot is not attacked.
Rational brute_force_gap(AttackClass a) {
    return brute_force_trap_fidelity(a) - (1 - Rational(a.lambda, 2 * a.kappa + 1));
}

}  // namespace

TEST(DeltaKappa, closed_form_values) {
    EXPECT_EQ(delta_kappa(1), Rational(1, 3));
    EXPECT_EQ(delta_kappa(2), Rational(1, 10));
    EXPECT_EQ(delta_kappa(3), Rational(1, 35));
    EXPECT_EQ(rational_string(delta_kappa(2)), "1/10");
    EXPECT_THROW(delta_kappa(0), std::invalid_argument);
}

TEST(DeltaKappa, strictly_decreasing_and_bounded) {
    for (int k = 1; k < 12; k++) {
        EXPECT_LE(delta_kappa(k), Rational(1, 3));
        EXPECT_GT(delta_kappa(k), delta_kappa(k + 1));
    }
}

TEST(AttackGap, formula_examples) {
    AttackGap g = attack_gap({1, 1, 1});
    EXPECT_EQ(g.trap_fidelity, Rational(1, 2));
    EXPECT_EQ(g.target_fidelity_bound, Rational(2, 3));
    EXPECT_EQ(g.gap, Rational(-1, 6));
    EXPECT_EQ(attack_gap({1, 3, 2}).gap, Rational(1, 3));
    EXPECT_LE(attack_gap({2, 2, 1}).gap, 0);
}

TEST(AttackGap, normalizes_and_validates) {
    EXPECT_EQ(normalize({2, 3, 1}).xi, 2);
    EXPECT_EQ(attack_gap({2, 3, 1}).gap, attack_gap({2, 3, 2}).gap);
    EXPECT_THROW(normalize({1, 2, 2}), std::invalid_argument);
    EXPECT_THROW(normalize({1, 4, 2}), std::invalid_argument);
    EXPECT_THROW(normalize({0, 1, 1}), std::invalid_argument);
}

TEST(AttackGap, full_attack_matches_brute_force) {
    for (int k = 1; k <= 5; k++) {
        AttackClass full{k, 2 * k + 1, k + 1};
        EXPECT_EQ(brute_force_trap_fidelity(full), delta_kappa(k)) << k;
        EXPECT_EQ(attack_gap(full).trap_fidelity, delta_kappa(k));
    }
}

TEST(AttackGap, maximum_is_delta_kappa) {
    for (int k = 1; k <= 8; k++) {
        EXPECT_EQ(max_attack_gap(k), delta_kappa(k)) << k;
    }
    // Same maximum from exhaustive placement counting.
    for (int k = 1; k <= 5; k++) {
        Rational best = -1;
        for (const auto &c : attack_classes(k)) {
            best = std::max(best, brute_force_gap(c));
        }
        EXPECT_EQ(best, delta_kappa(k)) << k;
    }
}

TEST(AttackGap, partial_attacks_nonpositive_except_kappa_one_pair) {
    // Counting placements gives +1/6 for kappa = 1, two attacked rounds of opposite
    // parity; the closed form agrees. Every other partial class is nonpositive.
    EXPECT_EQ(brute_force_gap({1, 2, 1}), Rational(1, 6));
    EXPECT_EQ(attack_gap({1, 2, 1}).gap, Rational(1, 6));
    for (int k = 1; k <= 5; k++) {
        for (const auto &c : attack_classes(k)) {
            if (c.lambda == 2 * k + 1 || (k == 1 && c.lambda == 2)) {
                continue;
            }
            EXPECT_LE(attack_gap(c).gap, 0) << k << " " << c.lambda << " " << c.xi;
            EXPECT_LE(brute_force_gap(c), 0) << k << " " << c.lambda << " " << c.xi;
        }
    }
}

TEST(AttackGap, class_enumeration) {
    auto c = attack_classes(1);
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[1].lambda, 2);
    EXPECT_EQ(c[2].lambda, 3);
}

TEST(Theorem1, substitution_example) {
    SchemeParams p = theorem1_params(9, 1, 0.001, 0.001, 0.05);
    EXPECT_NEAR(p.repetitions_real, std::log(20.0) / (2 * 81 * 4e-6), 1e-9);
    EXPECT_EQ(p.repetitions, 4624);
    EXPECT_NEAR(p.threshold, 0.946, 1e-12);
    EXPECT_NEAR(p.soundness, std::sqrt(9 * 0.008 + 1.0 / 3), 1e-12);
    EXPECT_NEAR(p.soundness, 0.6367, 1e-4);
    EXPECT_NEAR(p.completeness, 1 - std::sqrt(9 * 0.004), 1e-12);
    EXPECT_FALSE(p.out_of_regime);
}

TEST(Theorem1, monotone_in_noise_and_beta) {
    int64_t last = INT64_MAX;
    for (double e : {0.0005, 0.001, 0.002, 0.004}) {
        int64_t m = theorem1_params(9, 1, e, e, 0.05).repetitions;
        EXPECT_LE(m, last);
        last = m;
    }
    last = INT64_MAX;
    for (double b : {0.01, 0.05, 0.1, 0.5}) {
        int64_t m = theorem1_params(9, 1, 0.001, 0.001, b).repetitions;
        EXPECT_LE(m, last);
        last = m;
    }
}

TEST(Theorem1, flags_and_errors) {
    SchemeParams p = theorem1_params(100, 2, 0.01, 0.01, 0.05);
    EXPECT_TRUE(p.out_of_regime);
    EXPECT_LT(p.threshold_raw, 0);
    EXPECT_EQ(p.threshold, 0);
    EXPECT_THROW(theorem1_params(9, 1, 0, 0, 0.05), NoiselessBudgetError);
    EXPECT_THROW(theorem1_params(9, 1, 0.001, 0.001, 1.0), std::invalid_argument);
    EXPECT_THROW(theorem1_params(9, 1, 0.001, 0.001, 0.0), std::invalid_argument);
}

TEST(Theorem2, substitution_example) {
    SchemeParams p = theorem2_params(0.01, 2, 0.05);
    EXPECT_EQ(p.repetitions, 14979);
    EXPECT_NEAR(p.threshold, 0.98, 1e-12);
    EXPECT_NEAR(p.soundness, std::sqrt(0.13), 1e-12);
    EXPECT_NEAR(p.soundness, 0.3606, 1e-4);
    EXPECT_NEAR(p.completeness, 0.9, 1e-12);
}

TEST(Theorem3, examples) {
    HardnessBound a = theorem3_epsilon(0.1, 0.2, 0.9, 0.9, 10);
    EXPECT_TRUE(a.feasible);
    EXPECT_NEAR(a.epsilon, (0.8 - std::ldexp(1.0, -10)) * 0.02 / 2, 1e-15);
    EXPECT_FALSE(theorem3_epsilon(1, 1, 0.5, 0.4, 10).feasible);
    EXPECT_NEAR(theorem3_epsilon(1, 1, 1, 1, 60).epsilon, 0.5, 1e-15);
    EXPECT_THROW(theorem3_epsilon(1.5, 1, 1, 1, 5), std::invalid_argument);
}

TEST(Twirl, examples) {
    Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 2);
    zero(0, 0) = 1;
    EXPECT_LE(twirl_check(1, "X", "Z", zero, TwirlBasis::full), 1e-12);
    PhiloxStream rng(3, 0);
    Eigen::MatrixXcd rho = random_density_matrix(1, rng);
    Eigen::MatrixXcd x = pauli_matrix("X");
    EXPECT_LE((twirl_sum(1, "X", "X", rho, TwirlBasis::full) - 4 * x * rho * x).norm(), 1e-12);
    Eigen::MatrixXcd rho2 = random_density_matrix(2, rng);
    EXPECT_LE(twirl_check(2, "XI", "XX", rho2, TwirlBasis::z_only), 1e-12);
    EXPECT_THROW(twirl_check(2, "ZI", "XX", rho2, TwirlBasis::z_only), std::invalid_argument);
    EXPECT_THROW(twirl_check(1, "X", "Z", rho2, TwirlBasis::full), std::invalid_argument);
}

TEST(Twirl, random_density_matrices_are_states) {
    PhiloxStream rng(4, 0);
    for (int n = 1; n <= 3; n++) {
        Eigen::MatrixXcd rho = random_density_matrix(n, rng);
        EXPECT_NEAR(rho.trace().real(), 1, 1e-12);
        EXPECT_LE((rho - rho.adjoint()).norm(), 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
    }
}

TEST(Twirl, distinct_pairs_vanish_exhaustively) {
    PhiloxStream rng(5, 0);
    const char *letters = "IXYZ";
    for (int sample = 0; sample < 10; sample++) {
        Eigen::MatrixXcd rho = random_density_matrix(2, rng);
        for (int a = 0; a < 16; a++) {
            for (int b = 0; b < 16; b++) {
                std::string q{letters[a % 4], letters[a / 4]}, qp{letters[b % 4], letters[b / 4]};
                if (q != qp) {
                    ASSERT_LE(twirl_check(2, q, qp, rho, TwirlBasis::full), 1e-12) << q << " " << qp;
                }
            }
        }
    }
}
