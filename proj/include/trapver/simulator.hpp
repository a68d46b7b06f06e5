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

#ifndef TRAPVER_SIMULATOR_HPP
#define TRAPVER_SIMULATOR_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "trapver/graph.hpp"
#include "trapver/grid_angle.hpp"
#include "trapver/kernels.hpp"
#include "trapver/philox.hpp"

namespace trapver {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli parse_pauli(char c);

/// Default limit on live qubits in one state vector (64 MiB of amplitudes).
inline constexpr int kDefaultQubitCap = 22;

/// Dense pure state. Qubit q is bit q of the amplitude index.
class StateVector {
   public:
    /// |0...0> on num_qubits qubits.
    explicit StateVector(int num_qubits = 0, int cap = kDefaultQubitCap);
    /// Takes ownership of amplitudes whose length must be a power of two.
    static StateVector from_amplitudes(std::vector<Amplitude> amps, int cap = kDefaultQubitCap);

    int num_qubits() const {
        return num_qubits_;
    }
    int cap() const {
        return cap_;
    }
    std::span<const Amplitude> amplitudes() const {
        return amps_;
    }
    Amplitude amplitude(size_t index) const {
        return amps_.at(index);
    }
    double norm_squared() const;

    /// Tensors other onto this state; its qubits become the new highest indices.
    void append(const StateVector &other);

    void apply_cz(int a, int b);
    void apply_1q(int q, const Mat2 &u);
    /// Multiplies the |1> component of qubit q by exp(i * radians).
    void apply_phase(int q, double radians);
    void apply_pauli(int q, Pauli p);
    void apply_hadamard(int q);
    /// matrix is row-major over the listed qubits, qubits[0] least significant.
    void apply_unitary(std::span<const int> qubits, std::span<const Amplitude> matrix);

    double probability_one(int q) const;
    /// Projects qubit q onto |bit>, renormalizes once, and removes it.
    /// Qubits above q shift down by one.
    void collapse_and_remove(int q, int bit);
    /// Basis index whose cumulative probability first exceeds u.
    size_t sample_basis_state(double u) const;

   private:
    void check_qubit(int q) const;

    int num_qubits_;
    int cap_;
    std::vector<Amplitude> amps_;
};

struct PlusState {
    GridAngle theta;
};
struct DummyState {
    int bit = 0;
};
struct FlippedPlusState {
    GridAngle theta;
    int parity = 0;
};
using Preparation = std::variant<PlusState, DummyState, FlippedPlusState>;

/// Single-qubit state: |+_theta> = (|0> + e^{i theta}|1>)/sqrt 2, |d>, or Z^parity |+_theta>.
StateVector prepare_qubit(const Preparation &kind);

/// Free-function form; rejects equal or out-of-range indices.
void apply_cz(StateVector &s, int a, int b);

/// Probability of outcome 0 in the {|+_delta>, |-_delta>} basis.
double xy_probability_zero(const StateVector &s, int q, double delta);

/// Measures qubit q in the |+-_delta> basis (R_z(-delta) then X). Outcome 0 is |+_delta>.
/// The qubit is projected and removed from the state.
int measure_xy(StateVector &s, int q, double delta, PhiloxStream &rng);

/// Error decomposition applied on an error event.
struct PauliMix {
    double x = 1.0 / 3;
    double y = 1.0 / 3;
    double z = 1.0 / 3;

    void validate() const;
};

struct NoiseModel {
    double eps_v = 0;
    double eps_p = 0;
    PauliMix mix;

    void validate() const;
    bool noiseless() const {
        return eps_v == 0 && eps_p == 0;
    }
};

/// I with probability 1 - eps, else a Pauli drawn from mix. eps = 0 never consumes randomness.
Pauli draw_error(double eps, const PauliMix &mix, PhiloxStream &rng);

/// Applies draw_error to qubit q and returns the Pauli applied.
Pauli apply_noise(StateVector &s, int q, double eps, const PauliMix &mix, PhiloxStream &rng);

/// Probability over fixed-length bit strings. Bit i of a key is output position i.
class Distribution {
   public:
    explicit Distribution(int num_bits = 0);
    static Distribution from_dense(int num_bits, std::span<const double> probs);
    static Distribution empirical(int num_bits, std::span<const uint64_t> samples);

    int num_bits() const {
        return num_bits_;
    }
    const std::map<uint64_t, double> &entries() const {
        return probs_;
    }
    double probability(uint64_t outcome) const;
    void add(uint64_t outcome, double p);
    double total() const;

   private:
    int num_bits_;
    std::map<uint64_t, double> probs_;
};

/// Position i of the string is bit i.
std::string bits_to_string(uint64_t bits, int length);
uint64_t string_to_bits(const std::string &s);

/// Half the l1 distance.
double tv_distance(const Distribution &p, const Distribution &q);

/// |+>^n with CZ on every edge.
StateVector graph_state(const SimpleGraph &g, int cap = kDefaultQubitCap);

/// Exact outcome distribution of measuring every vertex of a graph state at deltas.
Distribution exact_output_distribution(const SimpleGraph &g, std::span<const double> deltas,
                                       int cap = kDefaultQubitCap);

/// Outcomes on the non-dummy vertices of g, in live_vertices() order.
/// deltas is indexed by vertex id; dummy entries are ignored.
Distribution exact_output_distribution(const GraphSpec &g, std::span<const double> deltas,
                                       int cap = kDefaultQubitCap);

/// The carving's own angles phi on non-dummy vertices, with bridge flips applied,
/// i.e. the distribution the sampler is meant to produce.
Distribution sampler_distribution(const GraphSpec &target, int cap = kDefaultQubitCap);

struct IsingInstance {
    int num_spins = 0;
    std::vector<Edge> bonds;
    double coupling = 0;
    std::vector<double> fields;
};

/// Ising model whose imaginary-temperature partition function gives the outcome
/// distribution of a graph state measured at angles phis.
IsingInstance ising_instance_for(const SimpleGraph &g, std::span<const double> phis);

/// |Tr exp(-i(H + pi/2 sum x_q Z_q))|^2 / 4^N by explicit summation.
double ising_partition_probability(const IsingInstance &inst, uint64_t outcome, int cap = kDefaultQubitCap);

}  // namespace trapver

#endif
