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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "trapver/kernels.hpp"

namespace trapver::kernels::omp {

namespace {

// Inserts a zero bit at each listed position (ascending) of a compact index.
inline size_t spread_zero_bits(size_t compact, std::span<const int> sorted_positions) {
    for (int p : sorted_positions) {
        size_t low = compact & ((size_t{1} << p) - 1);
        compact = ((compact >> p) << (p + 1)) | low;
    }
    return compact;
}

}  // namespace

void apply_cz(std::span<Amplitude> amps, int a, int b) {
    const size_t mask = (size_t{1} << a) | (size_t{1} << b);
    const int64_t n = static_cast<int64_t>(amps.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; i++) {
        if ((static_cast<size_t>(i) & mask) == mask) {
            amps[i] = -amps[i];
        }
    }
}

void apply_1q(std::span<Amplitude> amps, int q, const Mat2 &u) {
    const size_t stride = size_t{1} << q;
    const int64_t pairs = static_cast<int64_t>(amps.size() / 2);
    const int lowq[1] = {q};
#pragma omp parallel for schedule(static)
    for (int64_t k = 0; k < pairs; k++) {
        size_t i0 = spread_zero_bits(static_cast<size_t>(k), lowq);
        size_t i1 = i0 | stride;
        Amplitude x = amps[i0];
        Amplitude y = amps[i1];
        amps[i0] = u.a00 * x + u.a01 * y;
        amps[i1] = u.a10 * x + u.a11 * y;
    }
}

void apply_phase(std::span<Amplitude> amps, int q, Amplitude phase) {
    const size_t stride = size_t{1} << q;
    const int64_t n = static_cast<int64_t>(amps.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; i++) {
        if (static_cast<size_t>(i) & stride) {
            amps[i] *= phase;
        }
    }
}

void apply_pauli_x(std::span<Amplitude> amps, int q) {
    const size_t stride = size_t{1} << q;
    const int64_t pairs = static_cast<int64_t>(amps.size() / 2);
    const int lowq[1] = {q};
#pragma omp parallel for schedule(static)
    for (int64_t k = 0; k < pairs; k++) {
        size_t i0 = spread_zero_bits(static_cast<size_t>(k), lowq);
        std::swap(amps[i0], amps[i0 | stride]);
    }
}

void apply_unitary(std::span<Amplitude> amps, std::span<const int> qubits, std::span<const Amplitude> matrix) {
    const size_t k = qubits.size();
    const size_t dim = size_t{1} << k;
    std::vector<int> sorted(qubits.begin(), qubits.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<size_t> offsets(dim, 0);
    for (size_t t = 0; t < dim; t++) {
        for (size_t j = 0; j < k; j++) {
            if ((t >> j) & 1) {
                offsets[t] |= size_t{1} << qubits[j];
            }
        }
    }
    const int64_t blocks = static_cast<int64_t>(amps.size() >> k);
#pragma omp parallel for schedule(static)
    for (int64_t blk = 0; blk < blocks; blk++) {
        size_t base = spread_zero_bits(static_cast<size_t>(blk), sorted);
        std::vector<Amplitude> in(dim);
        for (size_t t = 0; t < dim; t++) {
            in[t] = amps[base | offsets[t]];
        }
        for (size_t r = 0; r < dim; r++) {
            Amplitude acc = 0;
            for (size_t c = 0; c < dim; c++) {
                acc += matrix[r * dim + c] * in[c];
            }
            amps[base | offsets[r]] = acc;
        }
    }
}

double norm_squared(std::span<const Amplitude> amps) {
    double total = 0;
    const int64_t n = static_cast<int64_t>(amps.size());
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (int64_t i = 0; i < n; i++) {
        total += std::norm(amps[i]);
    }
    return total;
}

double probability_one(std::span<const Amplitude> amps, int q) {
    const size_t stride = size_t{1} << q;
    double total = 0;
    const int64_t n = static_cast<int64_t>(amps.size());
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (int64_t i = 0; i < n; i++) {
        if (static_cast<size_t>(i) & stride) {
            total += std::norm(amps[i]);
        }
    }
    return total;
}

void scale(std::span<Amplitude> amps, double factor) {
    const int64_t n = static_cast<int64_t>(amps.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; i++) {
        amps[i] *= factor;
    }
}

void probabilities(std::span<const Amplitude> amps, std::span<double> out) {
    const int64_t n = static_cast<int64_t>(amps.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; i++) {
        out[i] = std::norm(amps[i]);
    }
}

Amplitude ising_trace(const IsingTerms &terms) {
    const int64_t configs = int64_t{1} << terms.num_spins;
    double re = 0;
    double im = 0;
#pragma omp parallel for schedule(static) reduction(+ : re, im)
    for (int64_t s = 0; s < configs; s++) {
        double energy = 0;
        for (auto [a, b] : terms.bonds) {
            int aligned = (((s >> a) ^ (s >> b)) & 1) == 0;
            energy -= terms.coupling * (aligned ? 1.0 : -1.0);
        }
        for (int q = 0; q < terms.num_spins; q++) {
            energy += ((s >> q) & 1) ? -terms.fields[q] : terms.fields[q];
        }
        re += std::cos(energy);
        im -= std::sin(energy);
    }
    return {re, im};
}

}  // namespace trapver::kernels::omp
