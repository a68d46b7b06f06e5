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

#include "trapver/kernels.hpp"

#include <random>

#include "gtest/gtest.h"

using namespace trapver;

namespace {

constexpr int kQubits = 15;

std::vector<Amplitude> random_state(int n, uint32_t seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> g;
    std::vector<Amplitude> v(size_t{1} << n);
    for (auto &a : v) {
        a = {g(gen), g(gen)};
    }
    double norm = kernels::serial::norm_squared(v);
    kernels::serial::scale(v, 1 / std::sqrt(norm));
    return v;
}

void expect_same(const std::vector<Amplitude> &a, const std::vector<Amplitude> &b) {
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); i++) {
        ASSERT_NEAR(std::abs(a[i] - b[i]), 0, 1e-14) << i;
    }
}

}  // namespace

TEST(Kernels, threshold_covers_test_size) {
    EXPECT_TRUE(kernels::use_parallel(size_t{1} << kQubits));
    EXPECT_FALSE(kernels::use_parallel(16));
}

TEST(Kernels, serial_and_omp_gates_agree) {
    auto a = random_state(kQubits, 1);
    auto b = a;
    const double s = 1 / std::sqrt(2.0);
    Mat2 h{s, s, s, -s};
    Mat2 u{Amplitude(0.6, 0), Amplitude(0, 0.8), Amplitude(0, 0.8), Amplitude(0.6, 0)};
    kernels::serial::apply_cz(a, 3, 11);
    kernels::omp::apply_cz(b, 3, 11);
    kernels::serial::apply_1q(a, 0, h);
    kernels::omp::apply_1q(b, 0, h);
    kernels::serial::apply_1q(a, 14, u);
    kernels::omp::apply_1q(b, 14, u);
    kernels::serial::apply_phase(a, 7, std::polar(1.0, 0.3));
    kernels::omp::apply_phase(b, 7, std::polar(1.0, 0.3));
    kernels::serial::apply_pauli_x(a, 9);
    kernels::omp::apply_pauli_x(b, 9);
    expect_same(a, b);

    std::vector<int> qubits{2, 13, 5};
    std::vector<Amplitude> perm(64, 0);
    for (int i = 0; i < 8; i++) {
        perm[((i + 3) % 8) * 8 + i] = Amplitude(0, 1);
    }
    kernels::serial::apply_unitary(a, qubits, perm);
    kernels::omp::apply_unitary(b, qubits, perm);
    expect_same(a, b);
}

TEST(Kernels, serial_and_omp_reductions_agree) {
    auto a = random_state(kQubits, 2);
    EXPECT_NEAR(kernels::serial::norm_squared(a), kernels::omp::norm_squared(a), 1e-12);
    for (int q : {0, 6, 14}) {
        EXPECT_NEAR(kernels::serial::probability_one(a, q), kernels::omp::probability_one(a, q), 1e-12);
    }
    std::vector<double> pa(a.size()), pb(a.size());
    kernels::serial::probabilities(a, pa);
    kernels::omp::probabilities(a, pb);
    for (size_t i = 0; i < pa.size(); i++) {
        ASSERT_EQ(pa[i], pb[i]);
    }
}

TEST(Kernels, ising_trace_serial_and_omp_agree) {
    std::vector<std::pair<int, int>> bonds;
    std::vector<double> fields;
    for (int i = 0; i < kQubits; i++) {
        fields.push_back(0.1 * i - 0.4);
        if (i + 1 < kQubits) {
            bonds.emplace_back(i, i + 1);
        }
        if (i + 5 < kQubits) {
            bonds.emplace_back(i, i + 5);
        }
    }
    IsingTerms terms{kQubits, bonds, 0.7, fields};
    Amplitude s = kernels::serial::ising_trace(terms);
    Amplitude p = kernels::omp::ising_trace(terms);
    EXPECT_NEAR(std::abs(s - p), 0, 1e-9 * std::max(1.0, std::abs(s)));
}

TEST(Kernels, cz_is_an_involution) {
    auto a = random_state(3, 3);
    auto b = a;
    kernels::serial::apply_cz(b, 0, 2);
    kernels::serial::apply_cz(b, 0, 2);
    expect_same(a, b);
}

TEST(Kernels, unitary_matches_single_qubit_gate) {
    auto a = random_state(4, 4);
    auto b = a;
    Mat2 u{Amplitude(0.6, 0), Amplitude(0, 0.8), Amplitude(0, 0.8), Amplitude(0.6, 0)};
    kernels::serial::apply_1q(a, 2, u);
    std::vector<int> q{2};
    std::vector<Amplitude> m{u.a00, u.a01, u.a10, u.a11};
    kernels::serial::apply_unitary(b, q, m);
    expect_same(a, b);
}
