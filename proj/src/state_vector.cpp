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

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "trapver/simulator.hpp"

namespace trapver {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const Mat2 kHadamard{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};

void check_cap(int num_qubits, int cap) {
    if (num_qubits > cap) {
        throw std::length_error(
            "state of " + std::to_string(num_qubits) + " qubits exceeds the cap of " + std::to_string(cap));
    }
}

}  // namespace

StateVector::StateVector(int num_qubits, int cap) : num_qubits_(num_qubits), cap_(cap) {
    if (num_qubits < 0) {
        throw std::invalid_argument("negative qubit count");
    }
    check_cap(num_qubits, cap);
    amps_.assign(size_t{1} << num_qubits, Amplitude{0});
    amps_[0] = 1;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amps, int cap) {
    size_t n = amps.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("amplitude count must be a power of two");
    }
    int qubits = std::countr_zero(n);
    StateVector s(0, cap);
    check_cap(qubits, cap);
    s.num_qubits_ = qubits;
    s.amps_ = std::move(amps);
    return s;
}

double StateVector::norm_squared() const {
    return kernels::norm_squared(amps_);
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_) {
        throw std::out_of_range(
            "qubit " + std::to_string(q) + " out of range for " + std::to_string(num_qubits_) + " qubits");
    }
}

void StateVector::append(const StateVector &other) {
    int total = num_qubits_ + other.num_qubits_;
    check_cap(total, cap_);
    const size_t low = amps_.size();
    std::vector<Amplitude> out(low * other.amps_.size());
    for (size_t hi = 0; hi < other.amps_.size(); hi++) {
        for (size_t lo = 0; lo < low; lo++) {
            out[hi * low + lo] = other.amps_[hi] * amps_[lo];
        }
    }
    amps_ = std::move(out);
    num_qubits_ = total;
}

void StateVector::apply_cz(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        throw std::invalid_argument("cz needs two distinct qubits");
    }
    kernels::apply_cz(amps_, a, b);
}

void StateVector::apply_1q(int q, const Mat2 &u) {
    check_qubit(q);
    kernels::apply_1q(amps_, q, u);
}

void StateVector::apply_phase(int q, double radians) {
    check_qubit(q);
    kernels::apply_phase(amps_, q, std::polar(1.0, radians));
}

void StateVector::apply_hadamard(int q) {
    apply_1q(q, kHadamard);
}

void StateVector::apply_pauli(int q, Pauli p) {
    check_qubit(q);
    switch (p) {
        case Pauli::I:
            return;
        case Pauli::X:
            kernels::apply_pauli_x(amps_, q);
            return;
        case Pauli::Y:
            kernels::apply_1q(amps_, q, Mat2{0, Amplitude(0, -1), Amplitude(0, 1), 0});
            return;
        case Pauli::Z:
            kernels::apply_phase(amps_, q, -1.0);
            return;
    }
}

void StateVector::apply_unitary(std::span<const int> qubits, std::span<const Amplitude> matrix) {
    size_t dim = size_t{1} << qubits.size();
    if (matrix.size() != dim * dim) {
        throw std::invalid_argument("unitary size does not match its qubit list");
    }
    for (size_t i = 0; i < qubits.size(); i++) {
        check_qubit(qubits[i]);
        for (size_t j = 0; j < i; j++) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument("unitary qubit list has duplicates");
            }
        }
    }
    kernels::apply_unitary(amps_, qubits, matrix);
}

double StateVector::probability_one(int q) const {
    check_qubit(q);
    return kernels::probability_one(amps_, q);
}

void StateVector::collapse_and_remove(int q, int bit) {
    check_qubit(q);
    const size_t low_mask = (size_t{1} << q) - 1;
    std::vector<Amplitude> out(amps_.size() / 2);
    for (size_t k = 0; k < out.size(); k++) {
        size_t idx = ((k & ~low_mask) << 1) | (k & low_mask) | (size_t(bit & 1) << q);
        out[k] = amps_[idx];
    }
    double norm = kernels::norm_squared(out);
    if (!(norm > 0)) {
        throw std::domain_error("collapse onto an outcome of probability zero");
    }
    kernels::scale(out, 1.0 / std::sqrt(norm));
    amps_ = std::move(out);
    num_qubits_--;
}

size_t StateVector::sample_basis_state(double u) const {
    double acc = 0;
    size_t last_nonzero = 0;
    for (size_t i = 0; i < amps_.size(); i++) {
        double p = std::norm(amps_[i]);
        if (p > 0) {
            last_nonzero = i;
        }
        acc += p;
        if (u < acc) {
            return i;
        }
    }
    return last_nonzero;
}

void apply_cz(StateVector &s, int a, int b) {
    s.apply_cz(a, b);
}

}  // namespace trapver
