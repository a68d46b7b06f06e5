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

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "trapver/bounds.hpp"

namespace trapver {

namespace {

Eigen::Matrix2cd single_pauli(char c) {
    using C = std::complex<double>;
    Eigen::Matrix2cd m;
    switch (c) {
        case 'I':
            m << 1, 0, 0, 1;
            return m;
        case 'X':
            m << 0, 1, 1, 0;
            return m;
        case 'Y':
            m << 0, C(0, -1), C(0, 1), 0;
            return m;
        case 'Z':
            m << 1, 0, 0, -1;
            return m;
    }
    throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

std::string nth_string(int n, int index, const char *alphabet, int radix) {
    std::string s(n, 'I');
    for (int i = n - 1; i >= 0; i--) {
        s[i] = alphabet[index % radix];
        index /= radix;
    }
    return s;
}

}  // namespace

Eigen::MatrixXcd pauli_matrix(const std::string &letters) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (char c : letters) {
        out = kron(out, single_pauli(c));
    }
    return out;
}

Eigen::MatrixXcd twirl_sum(int num_qubits, const std::string &q, const std::string &q_prime,
                           const Eigen::MatrixXcd &rho, TwirlBasis basis) {
    if (num_qubits < 1 || num_qubits > 3) {
        throw std::invalid_argument("twirl check supports 1 to 3 qubits");
    }
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    if (rho.rows() != dim || rho.cols() != dim) {
        throw std::invalid_argument("rho must be 2^n x 2^n");
    }
    if (q.size() != static_cast<size_t>(num_qubits) || q_prime.size() != static_cast<size_t>(num_qubits)) {
        throw std::invalid_argument("Pauli strings must have one letter per qubit");
    }
    if (basis == TwirlBasis::z_only) {
        for (char c : q + q_prime) {
            if (c != 'I' && c != 'X') {
                throw std::invalid_argument("the Z-only twirl needs Q and Q' built from I and X");
            }
        }
    }
    const Eigen::MatrixXcd mq = pauli_matrix(q);
    const Eigen::MatrixXcd mq2 = pauli_matrix(q_prime);
    const char *alphabet = basis == TwirlBasis::full ? "IXYZ" : "IZ";
    const int radix = basis == TwirlBasis::full ? 4 : 2;
    int count = 1;
    for (int i = 0; i < num_qubits; i++) {
        count *= radix;
    }
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < count; i++) {
        Eigen::MatrixXcd p = pauli_matrix(nth_string(num_qubits, i, alphabet, radix));
        sum += p * mq * p * rho * p * mq2 * p;
    }
    return sum;
}

Eigen::MatrixXcd random_density_matrix(int num_qubits, PhiloxStream &rng) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    auto gaussian = [&rng]() {
        double u1 = 1 - rng.uniform01();
        double u2 = rng.uniform01();
        return std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
    };
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index i = 0; i < dim; i++) {
        for (Eigen::Index j = 0; j < dim; j++) {
            double re = gaussian();
            double im = gaussian();
            g(i, j) = std::complex<double>(re, im);
        }
    }
    Eigen::MatrixXcd rho = g * g.adjoint();
    return rho / rho.trace().real();
}

double twirl_check(int num_qubits, const std::string &q, const std::string &q_prime, const Eigen::MatrixXcd &rho,
                   TwirlBasis basis) {
    return twirl_sum(num_qubits, q, q_prime, rho, basis).norm();
}

}  // namespace trapver
