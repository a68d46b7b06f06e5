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
#include <numbers>
#include <stdexcept>

#include "trapver/simulator.hpp"

namespace trapver {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kTwoPi = 2 * std::numbers::pi;

void check_bit(int b, const char *what) {
    if (b != 0 && b != 1) {
        throw std::invalid_argument(std::string(what) + " must be 0 or 1");
    }
}

void check_delta(double delta) {
    if (!std::isfinite(delta) || delta < 0 || delta >= kTwoPi) {
        throw std::invalid_argument("measurement angle must lie in [0, 2pi)");
    }
}

// Rotates qubit q so that |+_delta> maps to |0> and |-_delta> to |1>.
void rotate_to_computational(StateVector &s, int q, double delta) {
    s.apply_phase(q, -delta);
    s.apply_hadamard(q);
}

}  // namespace

char pauli_char(Pauli p) {
    return "IXYZ"[static_cast<int>(p)];
}

Pauli parse_pauli(char c) {
    switch (c) {
        case 'I':
        case '_':
            return Pauli::I;
        case 'X':
            return Pauli::X;
        case 'Y':
            return Pauli::Y;
        case 'Z':
            return Pauli::Z;
    }
    throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
}

StateVector prepare_qubit(const Preparation &kind) {
    std::vector<Amplitude> amps(2);
    if (auto *p = std::get_if<PlusState>(&kind)) {
        amps = {kInvSqrt2, std::polar(kInvSqrt2, p->theta.radians())};
    } else if (auto *d = std::get_if<DummyState>(&kind)) {
        check_bit(d->bit, "dummy bit");
        amps = {d->bit ? 0.0 : 1.0, d->bit ? 1.0 : 0.0};
    } else {
        const auto &f = std::get<FlippedPlusState>(kind);
        check_bit(f.parity, "parity");
        amps = {kInvSqrt2, std::polar(kInvSqrt2, (f.theta + (f.parity ? kAnglePi : kAngleZero)).radians())};
    }
    return StateVector::from_amplitudes(std::move(amps));
}

double xy_probability_zero(const StateVector &s, int q, double delta) {
    check_delta(delta);
    StateVector copy = s;
    rotate_to_computational(copy, q, delta);
    return 1 - copy.probability_one(q);
}

int measure_xy(StateVector &s, int q, double delta, PhiloxStream &rng) {
    check_delta(delta);
    rotate_to_computational(s, q, delta);
    double p1 = s.probability_one(q);
    int bit = rng.uniform01() < p1 ? 1 : 0;
    s.collapse_and_remove(q, bit);
    return bit;
}

void PauliMix::validate() const {
    if (x < 0 || y < 0 || z < 0 || !std::isfinite(x + y + z) || std::abs(x + y + z - 1) > 1e-9) {
        throw std::invalid_argument("Pauli error weights must be nonnegative and sum to 1");
    }
}

void NoiseModel::validate() const {
    for (double e : {eps_v, eps_p}) {
        if (!(e >= 0 && e < 1)) {
            throw std::invalid_argument("error probabilities must lie in [0, 1)");
        }
    }
    mix.validate();
}

Pauli draw_error(double eps, const PauliMix &mix, PhiloxStream &rng) {
    if (!(eps >= 0 && eps <= 1)) {
        throw std::invalid_argument("error probability must lie in [0, 1]");
    }
    if (eps == 0 || rng.uniform01() >= eps) {
        return Pauli::I;
    }
    double u = rng.uniform01() * (mix.x + mix.y + mix.z);
    if (u < mix.x) {
        return Pauli::X;
    }
    if (u < mix.x + mix.y) {
        return Pauli::Y;
    }
    return mix.z > 0 ? Pauli::Z : (mix.y > 0 ? Pauli::Y : Pauli::X);
}

Pauli apply_noise(StateVector &s, int q, double eps, const PauliMix &mix, PhiloxStream &rng) {
    if (q < 0 || q >= s.num_qubits()) {
        throw std::out_of_range("noise target out of range");
    }
    Pauli p = draw_error(eps, mix, rng);
    s.apply_pauli(q, p);
    return p;
}

Distribution::Distribution(int num_bits) : num_bits_(num_bits) {
    if (num_bits < 0 || num_bits > 63) {
        throw std::invalid_argument("distribution width must lie in [0, 63]");
    }
}

Distribution Distribution::from_dense(int num_bits, std::span<const double> probs) {
    if (probs.size() != (size_t{1} << num_bits)) {
        throw std::invalid_argument("dense distribution length must be 2^bits");
    }
    Distribution d(num_bits);
    for (size_t i = 0; i < probs.size(); i++) {
        if (probs[i] > 0) {
            d.probs_.emplace(i, probs[i]);
        }
    }
    return d;
}

Distribution Distribution::empirical(int num_bits, std::span<const uint64_t> samples) {
    Distribution d(num_bits);
    if (samples.empty()) {
        return d;
    }
    double w = 1.0 / static_cast<double>(samples.size());
    for (uint64_t s : samples) {
        d.add(s, w);
    }
    return d;
}

double Distribution::probability(uint64_t outcome) const {
    auto it = probs_.find(outcome);
    return it == probs_.end() ? 0.0 : it->second;
}

void Distribution::add(uint64_t outcome, double p) {
    if (num_bits_ < 63 && (outcome >> num_bits_) != 0) {
        throw std::invalid_argument("outcome wider than the distribution");
    }
    probs_[outcome] += p;
}

double Distribution::total() const {
    double t = 0;
    for (const auto &[k, p] : probs_) {
        t += p;
    }
    return t;
}

std::string bits_to_string(uint64_t bits, int length) {
    std::string s(length, '0');
    for (int i = 0; i < length; i++) {
        if ((bits >> i) & 1) {
            s[i] = '1';
        }
    }
    return s;
}

uint64_t string_to_bits(const std::string &s) {
    if (s.size() > 63) {
        throw std::invalid_argument("bit string longer than 63");
    }
    uint64_t out = 0;
    for (size_t i = 0; i < s.size(); i++) {
        if (s[i] == '1') {
            out |= uint64_t{1} << i;
        } else if (s[i] != '0') {
            throw std::invalid_argument("bit strings may only contain 0 and 1");
        }
    }
    return out;
}

double tv_distance(const Distribution &p, const Distribution &q) {
    if (p.num_bits() != q.num_bits()) {
        throw std::invalid_argument("distributions have different string lengths");
    }
    double sum = 0;
    for (const auto &[k, pk] : p.entries()) {
        sum += std::abs(pk - q.probability(k));
    }
    for (const auto &[k, qk] : q.entries()) {
        if (!p.entries().contains(k)) {
            sum += qk;
        }
    }
    return sum / 2;
}

StateVector graph_state(const SimpleGraph &g, int cap) {
    if (g.num_vertices > cap) {
        throw std::length_error(
            "graph of " + std::to_string(g.num_vertices) + " vertices exceeds the cap of " + std::to_string(cap));
    }
    std::vector<Amplitude> amps(size_t{1} << g.num_vertices, std::sqrt(std::ldexp(1.0, -g.num_vertices)));
    StateVector s = StateVector::from_amplitudes(std::move(amps), cap);
    for (auto [a, b] : g.edges) {
        s.apply_cz(a, b);
    }
    return s;
}

Distribution exact_output_distribution(const SimpleGraph &g, std::span<const double> deltas, int cap) {
    if (deltas.size() != static_cast<size_t>(g.num_vertices)) {
        throw std::invalid_argument("need one measurement angle per vertex");
    }
    StateVector s = graph_state(g, cap);
    for (int q = 0; q < g.num_vertices; q++) {
        rotate_to_computational(s, q, deltas[q]);
    }
    std::vector<double> probs(s.amplitudes().size());
    kernels::probabilities(s.amplitudes(), probs);
    return Distribution::from_dense(g.num_vertices, probs);
}

Distribution exact_output_distribution(const GraphSpec &g, std::span<const double> deltas, int cap) {
    if (deltas.size() != static_cast<size_t>(g.size())) {
        throw std::invalid_argument("need one measurement angle per vertex");
    }
    std::vector<double> live;
    for (int id : g.live_vertices()) {
        live.push_back(deltas[id]);
    }
    return exact_output_distribution(g.induced_graph(), live, cap);
}

Distribution sampler_distribution(const GraphSpec &target, int cap) {
    std::vector<double> deltas(target.size(), 0.0);
    for (const auto &v : target.vertices()) {
        deltas[v.id] = v.phi.radians();
    }
    Distribution raw = exact_output_distribution(target, deltas, cap);
    auto live = target.live_vertices();
    Distribution out(raw.num_bits());
    std::vector<uint8_t> bits(target.size(), 0);
    for (const auto &[outcome, p] : raw.entries()) {
        for (size_t i = 0; i < live.size(); i++) {
            bits[live[i]] = (outcome >> i) & 1;
        }
        auto mask = bridge_corrections(target, bits);
        uint64_t corrected = outcome;
        for (size_t i = 0; i < live.size(); i++) {
            corrected ^= uint64_t{mask[live[i]]} << i;
        }
        out.add(corrected, p);
    }
    return out;
}

IsingInstance ising_instance_for(const SimpleGraph &g, std::span<const double> phis) {
    if (phis.size() != static_cast<size_t>(g.num_vertices)) {
        throw std::invalid_argument("need one angle per vertex");
    }
    IsingInstance inst;
    inst.num_spins = g.num_vertices;
    inst.bonds = g.edges;
    inst.coupling = std::numbers::pi / 4;
    auto deg = g.degrees();
    for (int q = 0; q < g.num_vertices; q++) {
        inst.fields.push_back(std::numbers::pi * deg[q] / 4 - phis[q] / 2);
    }
    return inst;
}

double ising_partition_probability(const IsingInstance &inst, uint64_t outcome, int cap) {
    if (inst.num_spins > cap) {
        throw std::length_error("Ising instance exceeds the spin cap");
    }
    if (inst.fields.size() != static_cast<size_t>(inst.num_spins)) {
        throw std::invalid_argument("need one field per spin");
    }
    std::vector<double> fields = inst.fields;
    for (int q = 0; q < inst.num_spins; q++) {
        if ((outcome >> q) & 1) {
            fields[q] += std::numbers::pi / 2;
        }
    }
    IsingTerms terms{inst.num_spins, inst.bonds, inst.coupling, fields};
    Amplitude trace = kernels::ising_trace(terms);
    return std::ldexp(std::norm(trace), -2 * inst.num_spins);
}

}  // namespace trapver
