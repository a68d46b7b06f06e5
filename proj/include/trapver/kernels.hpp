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

#ifndef TRAPVER_KERNELS_HPP
#define TRAPVER_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace trapver {

using Amplitude = std::complex<double>;

/// Row-major 2x2 matrix.
struct Mat2 {
    Amplitude a00, a01, a10, a11;
};

/// Inputs of an Ising trace sum over all 2^n spin configurations.
///
/// Bit q of a configuration index is 0 for spin +1 and 1 for spin -1.
struct IsingTerms {
    int num_spins = 0;
    std::span<const std::pair<int, int>> bonds;
    double coupling = 0;
    std::span<const double> fields;
};

// Amplitude arrays use little-endian qubit order: qubit q is bit q of the index.
namespace kernels::serial {
void apply_cz(std::span<Amplitude> amps, int a, int b);
void apply_1q(std::span<Amplitude> amps, int q, const Mat2 &u);
void apply_phase(std::span<Amplitude> amps, int q, Amplitude phase);
void apply_pauli_x(std::span<Amplitude> amps, int q);
/// Dense unitary on the listed qubits; qubits[0] is the least significant local bit.
void apply_unitary(std::span<Amplitude> amps, std::span<const int> qubits, std::span<const Amplitude> matrix);
double norm_squared(std::span<const Amplitude> amps);
double probability_one(std::span<const Amplitude> amps, int q);
void scale(std::span<Amplitude> amps, double factor);
void probabilities(std::span<const Amplitude> amps, std::span<double> out);
/// Sum over configurations of exp(-i E), E = -J sum s_a s_b + sum h_q s_q.
Amplitude ising_trace(const IsingTerms &terms);
}  // namespace kernels::serial

namespace kernels::omp {
void apply_cz(std::span<Amplitude> amps, int a, int b);
void apply_1q(std::span<Amplitude> amps, int q, const Mat2 &u);
void apply_phase(std::span<Amplitude> amps, int q, Amplitude phase);
void apply_pauli_x(std::span<Amplitude> amps, int q);
void apply_unitary(std::span<Amplitude> amps, std::span<const int> qubits, std::span<const Amplitude> matrix);
double norm_squared(std::span<const Amplitude> amps);
double probability_one(std::span<const Amplitude> amps, int q);
void scale(std::span<Amplitude> amps, double factor);
void probabilities(std::span<const Amplitude> amps, std::span<double> out);
Amplitude ising_trace(const IsingTerms &terms);
}  // namespace kernels::omp

namespace kernels {

/// Arrays at least this long go to the OpenMP kernels. Smaller ones lose to thread startup.
inline constexpr size_t kParallelThreshold = size_t{1} << 14;

inline bool use_parallel(size_t length) {
    return length >= kParallelThreshold;
}

inline void apply_cz(std::span<Amplitude> amps, int a, int b) {
    use_parallel(amps.size()) ? omp::apply_cz(amps, a, b) : serial::apply_cz(amps, a, b);
}
inline void apply_1q(std::span<Amplitude> amps, int q, const Mat2 &u) {
    use_parallel(amps.size()) ? omp::apply_1q(amps, q, u) : serial::apply_1q(amps, q, u);
}
inline void apply_phase(std::span<Amplitude> amps, int q, Amplitude phase) {
    use_parallel(amps.size()) ? omp::apply_phase(amps, q, phase) : serial::apply_phase(amps, q, phase);
}
inline void apply_pauli_x(std::span<Amplitude> amps, int q) {
    use_parallel(amps.size()) ? omp::apply_pauli_x(amps, q) : serial::apply_pauli_x(amps, q);
}
inline void apply_unitary(std::span<Amplitude> amps, std::span<const int> qubits, std::span<const Amplitude> matrix) {
    use_parallel(amps.size()) ? omp::apply_unitary(amps, qubits, matrix)
                              : serial::apply_unitary(amps, qubits, matrix);
}
inline double norm_squared(std::span<const Amplitude> amps) {
    return use_parallel(amps.size()) ? omp::norm_squared(amps) : serial::norm_squared(amps);
}
inline double probability_one(std::span<const Amplitude> amps, int q) {
    return use_parallel(amps.size()) ? omp::probability_one(amps, q) : serial::probability_one(amps, q);
}
inline void scale(std::span<Amplitude> amps, double factor) {
    use_parallel(amps.size()) ? omp::scale(amps, factor) : serial::scale(amps, factor);
}
inline void probabilities(std::span<const Amplitude> amps, std::span<double> out) {
    use_parallel(amps.size()) ? omp::probabilities(amps, out) : serial::probabilities(amps, out);
}
inline Amplitude ising_trace(const IsingTerms &terms) {
    return use_parallel(size_t{1} << terms.num_spins) ? omp::ising_trace(terms) : serial::ising_trace(terms);
}

}  // namespace kernels

}  // namespace trapver

#endif
