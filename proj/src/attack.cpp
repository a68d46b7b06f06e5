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

#include <Eigen/Dense>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "trapver/protocol.hpp"

namespace trapver {

namespace {

// Product of two Paulis up to phase.
Pauli multiply(Pauli a, Pauli b) {
    auto x = [](Pauli p) {
        return p == Pauli::X || p == Pauli::Y;
    };
    auto z = [](Pauli p) {
        return p == Pauli::Z || p == Pauli::Y;
    };
    bool px = x(a) != x(b);
    bool pz = z(a) != z(b);
    if (px && pz) {
        return Pauli::Y;
    }
    return px ? Pauli::X : (pz ? Pauli::Z : Pauli::I);
}

}  // namespace

AttackSpec AttackSpec::single(int rounds, int vertices, std::span<const std::pair<AttackTarget, Pauli>> letters) {
    PauliTerm term;
    term.weight = 1;
    term.letters.assign(rounds, std::vector<Pauli>(vertices, Pauli::I));
    for (const auto &[where, p] : letters) {
        if (where.round < 0 || where.round >= rounds || where.vertex < 0 || where.vertex >= vertices) {
            throw std::out_of_range("attack letter outside the layout");
        }
        term.letters[where.round][where.vertex] = p;
    }
    return AttackSpec(PauliAttack{{std::move(term)}});
}

void AttackSpec::validate(int rounds, int vertices) const {
    if (is_pauli()) {
        const auto &terms = pauli().terms;
        if (terms.empty()) {
            throw std::invalid_argument("Pauli attack needs at least one term");
        }
        double total = 0;
        for (const auto &t : terms) {
            if (!(t.weight >= 0) || !std::isfinite(t.weight)) {
                throw std::invalid_argument("Pauli attack weights must be nonnegative");
            }
            total += t.weight;
            if (t.letters.size() != static_cast<size_t>(rounds)) {
                throw std::invalid_argument(
                    "Pauli attack term has " + std::to_string(t.letters.size()) + " rounds, layout has " +
                    std::to_string(rounds));
            }
            for (const auto &row : t.letters) {
                if (row.size() != static_cast<size_t>(vertices)) {
                    throw std::invalid_argument(
                        "Pauli attack round has " + std::to_string(row.size()) + " letters, layout has " +
                        std::to_string(vertices) + " vertices");
                }
            }
        }
        if (std::abs(total - 1) > 1e-9) {
            throw std::invalid_argument("Pauli attack weights must sum to 1");
        }
        return;
    }
    const auto &u = unitary();
    std::set<std::pair<int, int>> seen;
    for (const auto &t : u.targets) {
        if (t.round < 0 || t.round >= rounds || t.vertex < 0 || t.vertex >= vertices) {
            throw std::out_of_range("unitary attack target outside the layout");
        }
        if (!seen.insert({t.round, t.vertex}).second) {
            throw std::invalid_argument("unitary attack lists a target twice");
        }
    }
    if (u.private_qubits < 0) {
        throw std::invalid_argument("negative private register size");
    }
    int k = static_cast<int>(u.targets.size()) + u.private_qubits;
    if (k < 1 || k > kMaxUnitaryQubits) {
        throw std::invalid_argument(
            "unitary attack must act on 1 to " + std::to_string(kMaxUnitaryQubits) + " qubits");
    }
    const Eigen::Index dim = Eigen::Index{1} << k;
    if (u.matrix.size() != static_cast<size_t>(dim * dim)) {
        throw std::invalid_argument("unitary attack matrix has the wrong size");
    }
    Eigen::Map<const Eigen::Matrix<Amplitude, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        u.matrix.data(), dim, dim);
    double err = (m.adjoint() * m - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (err > 1e-10) {
        throw std::invalid_argument("unitary attack matrix is not unitary (deviation " + std::to_string(err) + ")");
    }
}

AttackSpec AttackSpec::with_extra_letter(AttackTarget where, Pauli p) const {
    PauliAttack out = pauli();
    for (auto &t : out.terms) {
        auto &slot = t.letters.at(where.round).at(where.vertex);
        slot = multiply(slot, p);
    }
    return AttackSpec(std::move(out));
}

}  // namespace trapver
