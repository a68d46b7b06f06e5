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
#include <numeric>
#include <stdexcept>
#include <string>

#include "trapver/protocol.hpp"

namespace trapver {

namespace {

// One slot laid out in a (possibly shared) register. Vertices that are not in the
// register are dummies tracked as classical bits: Paulis X/Y flip them and a CZ
// with a set bit becomes Z on the partner.
struct SlotSim {
    const GraphSpec *graph = nullptr;
    std::vector<int> qubit;
    std::vector<uint8_t> classical;
    std::vector<GridAngle> delta;
};

void apply_letter(StateVector &reg, SlotSim &st, int v, Pauli p) {
    if (p == Pauli::I) {
        return;
    }
    if (st.qubit[v] >= 0) {
        reg.apply_pauli(st.qubit[v], p);
    } else if (p == Pauli::X || p == Pauli::Y) {
        st.classical[v] ^= 1;
    }
}

SlotSim prepare_slot(StateVector &reg, const SecretKey &key, const RoundLayout &layout, int slot,
                     std::vector<GridAngle> deltas, std::span<const uint8_t> promote, const NoiseModel &noise,
                     PhiloxStream &rng, OpCounts &ops) {
    const GraphSpec &g = layout.graph(key.order[slot]);
    SlotSim st{&g, std::vector<int>(g.size(), -1), std::vector<uint8_t>(g.size(), 0), std::move(deltas)};
    for (int v = 0; v < g.size(); v++) {
        bool live = !g.is_dummy(v) || (!promote.empty() && promote[v]);
        if (live) {
            reg.append(prepare_qubit(prepared_state(key, layout, slot, v)));
            st.qubit[v] = reg.num_qubits() - 1;
        } else {
            st.classical[v] = key.slots[slot].d[v];
        }
        ops.preparations++;
        Pauli e = draw_error(noise.eps_v, noise.mix, rng);
        if (e != Pauli::I) {
            ops.verifier_errors++;
            apply_letter(reg, st, v, e);
        }
    }
    return st;
}

void entangle_slot(StateVector &reg, SlotSim &st, const NoiseModel &noise, PhiloxStream &rng, OpCounts &ops) {
    for (auto [a, b] : st.graph->edges()) {
        ops.entanglers++;
        int qa = st.qubit[a];
        int qb = st.qubit[b];
        if (qa >= 0 && qb >= 0) {
            reg.apply_cz(qa, qb);
        } else if (qa >= 0 && st.classical[b]) {
            reg.apply_pauli(qa, Pauli::Z);
        } else if (qb >= 0 && st.classical[a]) {
            reg.apply_pauli(qb, Pauli::Z);
        }
        Pauli e = draw_error(noise.eps_p, noise.mix, rng);
        if (e != Pauli::I) {
            ops.prover_errors++;
            apply_letter(reg, st, rng.bit() ? b : a, e);
        }
    }
}

void rotate_slot(StateVector &reg, const SlotSim &st) {
    for (size_t v = 0; v < st.qubit.size(); v++) {
        if (st.qubit[v] >= 0) {
            reg.apply_phase(st.qubit[v], -st.delta[v].radians());
        }
    }
}

void attack_slot(StateVector &reg, SlotSim &st, std::span<const Pauli> letters) {
    if (letters.empty()) {
        return;
    }
    if (letters.size() != st.qubit.size()) {
        throw std::invalid_argument("attack letters do not match the round's vertex count");
    }
    for (size_t v = 0; v < letters.size(); v++) {
        apply_letter(reg, st, static_cast<int>(v), letters[v]);
    }
}

void measurement_noise(StateVector &reg, SlotSim &st, const NoiseModel &noise, PhiloxStream &rng, OpCounts &ops) {
    for (size_t v = 0; v < st.qubit.size(); v++) {
        ops.measurements++;
        Pauli e = draw_error(noise.eps_p, noise.mix, rng);
        if (e != Pauli::I) {
            ops.prover_errors++;
            apply_letter(reg, st, static_cast<int>(v), e);
        }
    }
}

void to_x_basis(StateVector &reg, const SlotSim &st) {
    for (int q : st.qubit) {
        if (q >= 0) {
            reg.apply_hadamard(q);
        }
    }
}

// Live outcomes come from the sampled basis index; a classical dummy measured in
// the xy-plane gives a uniform bit.
std::vector<uint8_t> read_out(const SlotSim &st, size_t index, PhiloxStream &rng) {
    std::vector<uint8_t> raw(st.qubit.size(), 0);
    for (size_t v = 0; v < st.qubit.size(); v++) {
        raw[v] = st.qubit[v] >= 0 ? static_cast<uint8_t>((index >> st.qubit[v]) & 1) : rng.bit();
    }
    return raw;
}

std::vector<uint8_t> decrypt_slot(const SecretKey &key, const RoundLayout &layout, int slot,
                                  std::span<const uint8_t> raw) {
    const GraphSpec &g = layout.graph(key.order[slot]);
    const SlotKey &sk = key.slots[slot];
    if (raw.size() != static_cast<size_t>(g.size())) {
        throw std::invalid_argument(
            "round " + std::to_string(slot) + " is missing outcomes: expected " + std::to_string(g.size()) +
            ", got " + std::to_string(raw.size()));
    }
    std::vector<uint8_t> full(g.size(), 0);
    for (int v = 0; v < g.size(); v++) {
        if (g.is_dummy(v)) {
            continue;
        }
        uint8_t x = (raw[v] ^ sk.r[v]) & 1;
        for (int nb : g.neighbors(v)) {
            if (!g.is_dummy(nb)) {
                x ^= sk.r_prime[nb];
            }
        }
        full[v] = x;
    }
    if (layout.kind(key.order[slot]) == RoundKind::target) {
        auto mask = bridge_corrections(g, full);
        for (int v = 0; v < g.size(); v++) {
            full[v] ^= mask[v];
        }
    }
    std::vector<uint8_t> out;
    for (int v : g.live_vertices()) {
        out.push_back(full[v]);
    }
    return out;
}

int count_live(const GraphSpec &g) {
    return g.size() - g.count(VertexRole::dummy);
}

}  // namespace

int SecretKey::target_slot(const RoundLayout &layout) const {
    for (size_t s = 0; s < order.size(); s++) {
        if (layout.kind(order[s]) == RoundKind::target) {
            return static_cast<int>(s);
        }
    }
    throw std::logic_error("key has no target round");
}

SecretKey keygen(const RoundLayout &layout, PhiloxStream &rng) {
    SecretKey key;
    const int rounds = layout.num_rounds();
    key.order.resize(rounds);
    std::iota(key.order.begin(), key.order.end(), 0);
    for (int i = rounds - 1; i > 0; i--) {
        std::swap(key.order[i], key.order[rng.below(i + 1)]);
    }
    const int n = layout.graph(0).size();
    key.slots.resize(rounds);
    for (auto &sk : key.slots) {
        sk.theta.resize(n);
        sk.r.resize(n);
        sk.r_prime.resize(n);
        sk.d.resize(n);
        sk.dummy_angle.resize(n);
        for (int v = 0; v < n; v++) {
            sk.theta[v] = GridAngle::wrap(static_cast<int>(rng.below(16)));
            sk.r[v] = rng.bit();
            sk.r_prime[v] = rng.bit();
            sk.d[v] = rng.bit();
            sk.dummy_angle[v] = GridAngle::wrap(static_cast<int>(rng.below(16)));
        }
    }
    return key;
}

std::vector<std::vector<GridAngle>> encrypt_angles(const SecretKey &key, const RoundLayout &layout) {
    if (key.order.size() != static_cast<size_t>(layout.num_rounds()) || key.slots.size() != key.order.size()) {
        throw std::invalid_argument("key does not match the layout");
    }
    std::vector<std::vector<GridAngle>> out;
    for (size_t s = 0; s < key.order.size(); s++) {
        const GraphSpec &g = layout.graph(key.order[s]);
        const SlotKey &sk = key.slots[s];
        if (sk.theta.size() != static_cast<size_t>(g.size())) {
            throw std::invalid_argument("key does not match the layout");
        }
        std::vector<GridAngle> deltas(g.size());
        for (const auto &v : g.vertices()) {
            if (v.role == VertexRole::dummy) {
                deltas[v.id] = sk.dummy_angle[v.id];
            } else {
                GridAngle phi = sk.r_prime[v.id] ? -v.phi : v.phi;
                deltas[v.id] = sk.theta[v.id] + phi + (sk.r[v.id] ? kAnglePi : kAngleZero);
            }
        }
        out.push_back(std::move(deltas));
    }
    return out;
}

Preparation prepared_state(const SecretKey &key, const RoundLayout &layout, int slot, int vertex) {
    const GraphSpec &g = layout.graph(key.order.at(slot));
    const SlotKey &sk = key.slots.at(slot);
    if (g.is_dummy(vertex)) {
        return DummyState{sk.d[vertex]};
    }
    int parity = 0;
    for (int nb : g.neighbors(vertex)) {
        if (g.is_dummy(nb)) {
            parity ^= sk.d[nb];
        }
    }
    return FlippedPlusState{sk.theta[vertex], parity};
}

OpCounts &OpCounts::operator+=(const OpCounts &o) {
    preparations += o.preparations;
    entanglers += o.entanglers;
    measurements += o.measurements;
    verifier_errors += o.verifier_errors;
    prover_errors += o.prover_errors;
    return *this;
}

RoundResult run_round(const SecretKey &key, int slot, const RoundLayout &layout, std::span<const Pauli> attack,
                      const NoiseModel &noise, PhiloxStream &rng, int cap) {
    if (slot < 0 || slot >= layout.num_rounds()) {
        throw std::out_of_range("round index out of range");
    }
    const GraphSpec &g = layout.graph(key.order.at(slot));
    if (count_live(g) > cap) {
        throw std::length_error(
            "round has " + std::to_string(count_live(g)) + " live qubits, cap is " + std::to_string(cap));
    }
    auto deltas = encrypt_angles(key, layout);
    RoundResult out;
    StateVector reg(0, cap);
    SlotSim st = prepare_slot(reg, key, layout, slot, deltas[slot], {}, noise, rng, out.ops);
    entangle_slot(reg, st, noise, rng, out.ops);
    rotate_slot(reg, st);
    attack_slot(reg, st, attack);
    measurement_noise(reg, st, noise, rng, out.ops);
    to_x_basis(reg, st);
    size_t index = reg.sample_basis_state(rng.uniform01());
    out.raw = read_out(st, index, rng);
    return out;
}

std::vector<std::vector<uint8_t>> decrypt(const SecretKey &key, const RoundLayout &layout,
                                          std::span<const std::vector<uint8_t>> raw) {
    if (raw.size() != static_cast<size_t>(layout.num_rounds())) {
        throw std::invalid_argument("outcomes missing for some rounds");
    }
    std::vector<std::vector<uint8_t>> out;
    for (size_t s = 0; s < raw.size(); s++) {
        out.push_back(decrypt_slot(key, layout, static_cast<int>(s), raw[s]));
    }
    return out;
}

uint64_t RunRecord::target_output_bits() const {
    uint64_t bits = 0;
    for (size_t i = 0; i < target_output.size(); i++) {
        bits |= uint64_t{target_output[i] & 1u} << i;
    }
    return bits;
}

namespace {

std::vector<std::vector<uint8_t>> run_joint(const SecretKey &key, const RoundLayout &layout,
                                            const UnitaryAttack &attack, const NoiseModel &noise, uint64_t seed,
                                            uint64_t repetition, int cap, OpCounts &ops) {
    const int rounds = layout.num_rounds();
    const int n = layout.graph(0).size();
    std::vector<std::vector<uint8_t>> promote(rounds, std::vector<uint8_t>(n, 0));
    int live = attack.private_qubits;
    for (const auto &t : attack.targets) {
        promote[t.round][t.vertex] = 1;
    }
    for (int s = 0; s < rounds; s++) {
        const GraphSpec &g = layout.graph(key.order[s]);
        for (int v = 0; v < n; v++) {
            live += !g.is_dummy(v) || promote[s][v];
        }
    }
    if (live > cap) {
        throw std::length_error(
            "joint deviation needs " + std::to_string(live) + " qubits, cap is " + std::to_string(cap));
    }
    auto deltas = encrypt_angles(key, layout);
    StateVector reg(0, cap);
    std::vector<PhiloxStream> streams;
    std::vector<SlotSim> sims;
    for (int s = 0; s < rounds; s++) {
        streams.emplace_back(seed, stream_id(repetition, StreamPurpose::slot_base, s));
        sims.push_back(prepare_slot(reg, key, layout, s, deltas[s], promote[s], noise, streams[s], ops));
        entangle_slot(reg, sims[s], noise, streams[s], ops);
        rotate_slot(reg, sims[s]);
    }
    std::vector<int> qubits;
    for (const auto &t : attack.targets) {
        qubits.push_back(sims[t.round].qubit[t.vertex]);
    }
    int first_private = reg.num_qubits();
    reg.append(StateVector(attack.private_qubits, cap));
    for (int p = 0; p < attack.private_qubits; p++) {
        qubits.push_back(first_private + p);
    }
    reg.apply_unitary(qubits, attack.matrix);
    for (int s = 0; s < rounds; s++) {
        measurement_noise(reg, sims[s], noise, streams[s], ops);
        to_x_basis(reg, sims[s]);
    }
    PhiloxStream joint(seed, stream_id(repetition, StreamPurpose::joint));
    size_t index = reg.sample_basis_state(joint.uniform01());
    std::vector<std::vector<uint8_t>> raw;
    for (int s = 0; s < rounds; s++) {
        raw.push_back(read_out(sims[s], index, streams[s]));
    }
    return raw;
}

}  // namespace

RunRecord run_protocol(const RoundLayout &layout, const Strategy &strategy, const NoiseModel &noise, uint64_t seed,
                       uint64_t repetition, const ProtocolOptions &options) {
    noise.validate();
    const int rounds = layout.num_rounds();
    const int n = layout.graph(0).size();
    if (strategy) {
        strategy->validate(rounds, n);
    }
    PhiloxStream key_rng(seed, stream_id(repetition, StreamPurpose::key));
    SecretKey key = keygen(layout, key_rng);

    RunRecord rec;
    std::vector<std::vector<uint8_t>> raw;
    if (strategy && !strategy->is_pauli()) {
        raw = run_joint(key, layout, strategy->unitary(), noise, seed, repetition, options.cap, rec.ops);
    } else {
        const PauliTerm *term = nullptr;
        if (strategy) {
            const auto &terms = strategy->pauli().terms;
            PhiloxStream attack_rng(seed, stream_id(repetition, StreamPurpose::attack));
            double u = attack_rng.uniform01();
            double acc = 0;
            rec.attack_term = static_cast<int>(terms.size()) - 1;
            for (size_t i = 0; i < terms.size(); i++) {
                acc += terms[i].weight;
                if (u < acc) {
                    rec.attack_term = static_cast<int>(i);
                    break;
                }
            }
            term = &terms[rec.attack_term];
        }
        for (int s = 0; s < rounds; s++) {
            PhiloxStream rng(seed, stream_id(repetition, StreamPurpose::slot_base, s));
            std::span<const Pauli> letters;
            if (term) {
                letters = term->letters[s];
            }
            RoundResult rr = run_round(key, s, layout, letters, noise, rng, options.cap);
            rec.ops += rr.ops;
            raw.push_back(std::move(rr.raw));
        }
    }

    auto decrypted = decrypt(key, layout, raw);
    rec.accept = true;
    for (int s = 0; s < rounds; s++) {
        SlotRecord sr;
        sr.kind = layout.kind(key.order[s]);
        sr.raw = std::move(raw[s]);
        sr.decrypted = std::move(decrypted[s]);
        if (sr.kind == RoundKind::target) {
            rec.target_output = sr.decrypted;
        } else {
            bool pass = std::all_of(sr.decrypted.begin(), sr.decrypted.end(), [](uint8_t b) {
                return b == 0;
            });
            sr.trap_pass = pass;
            rec.accept = rec.accept && pass;
        }
        rec.slots.push_back(std::move(sr));
    }
    return rec;
}

Distribution decrypted_target_distribution(const SecretKey &key, const RoundLayout &layout,
                                           std::span<const Pauli> target_attack, int cap) {
    const int slot = key.target_slot(layout);
    const GraphSpec &g = layout.graph(key.order[slot]);
    if (count_live(g) > cap) {
        throw std::length_error("target round exceeds the qubit cap");
    }
    auto deltas = encrypt_angles(key, layout);
    StateVector reg(0, cap);
    OpCounts ops;
    NoiseModel quiet;
    PhiloxStream unused(0, 0);
    SlotSim st = prepare_slot(reg, key, layout, slot, deltas[slot], {}, quiet, unused, ops);
    entangle_slot(reg, st, quiet, unused, ops);
    rotate_slot(reg, st);
    attack_slot(reg, st, target_attack);
    to_x_basis(reg, st);

    std::vector<double> probs(reg.amplitudes().size());
    kernels::probabilities(reg.amplitudes(), probs);
    Distribution out(count_live(g));
    std::vector<uint8_t> raw(g.size(), 0);
    for (size_t index = 0; index < probs.size(); index++) {
        if (probs[index] <= 0) {
            continue;
        }
        for (int v = 0; v < g.size(); v++) {
            raw[v] = st.qubit[v] >= 0 ? static_cast<uint8_t>((index >> st.qubit[v]) & 1) : 0;
        }
        auto bits = decrypt_slot(key, layout, slot, raw);
        uint64_t packed = 0;
        for (size_t i = 0; i < bits.size(); i++) {
            packed |= uint64_t{bits[i]} << i;
        }
        out.add(packed, probs[index]);
    }
    return out;
}

}  // namespace trapver
