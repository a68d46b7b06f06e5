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

#ifndef TRAPVER_PROTOCOL_HPP
#define TRAPVER_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "trapver/graph.hpp"
#include "trapver/philox.hpp"
#include "trapver/simulator.hpp"

namespace trapver {

/// One Pauli letter per vertex per round, in the order the prover receives rounds.
struct PauliTerm {
    double weight = 1;
    std::vector<std::vector<Pauli>> letters;
};

struct PauliAttack {
    std::vector<PauliTerm> terms;
};

struct AttackTarget {
    int round = 0;
    int vertex = 0;
};

/// Explicit deviation on a few qubits plus a private register initialised to |0...0>.
/// Local qubit order is targets (listed order) then private qubits, first = least significant.
struct UnitaryAttack {
    std::vector<AttackTarget> targets;
    int private_qubits = 0;
    std::vector<Amplitude> matrix;  // row-major
};

/// Largest explicit deviation accepted, in qubits acted on.
inline constexpr int kMaxUnitaryQubits = 10;

/// A dishonest prover's deviation, inserted after the measurement-angle rotations.
class AttackSpec {
   public:
    explicit AttackSpec(PauliAttack attack) : body_(std::move(attack)) {
    }
    explicit AttackSpec(UnitaryAttack attack) : body_(std::move(attack)) {
    }

    /// A single deterministic Pauli string with the listed non-identity letters.
    static AttackSpec single(int rounds, int vertices, std::span<const std::pair<AttackTarget, Pauli>> letters);

    bool is_pauli() const {
        return std::holds_alternative<PauliAttack>(body_);
    }
    const PauliAttack &pauli() const {
        return std::get<PauliAttack>(body_);
    }
    const UnitaryAttack &unitary() const {
        return std::get<UnitaryAttack>(body_);
    }

    /// Checks shape against a layout and the weight / unitarity invariants.
    void validate(int rounds, int vertices) const;

    /// Same attack with one more letter multiplied into every term (Pauli attacks only).
    AttackSpec with_extra_letter(AttackTarget where, Pauli p) const;

   private:
    std::variant<PauliAttack, UnitaryAttack> body_;
};

/// No value means an honest prover.
using Strategy = std::optional<AttackSpec>;

/// Per-round secrets, each indexed by vertex id. Entries at roles that do not use
/// them are drawn anyway so the stream layout is independent of the carving.
struct SlotKey {
    std::vector<GridAngle> theta;
    std::vector<uint8_t> r;
    std::vector<uint8_t> r_prime;
    std::vector<uint8_t> d;
    std::vector<GridAngle> dummy_angle;
};

struct SecretKey {
    /// order[slot] is the canonical layout index sent at position slot.
    std::vector<int> order;
    std::vector<SlotKey> slots;

    int target_slot(const RoundLayout &layout) const;
};

SecretKey keygen(const RoundLayout &layout, PhiloxStream &rng);

/// delta per vertex for every slot: theta + (-1)^{r'} phi + r pi on non-dummies,
/// the random dummy angle on dummies.
std::vector<std::vector<GridAngle>> encrypt_angles(const SecretKey &key, const RoundLayout &layout);

/// State the verifier sends for one vertex of one slot.
Preparation prepared_state(const SecretKey &key, const RoundLayout &layout, int slot, int vertex);

struct OpCounts {
    int64_t preparations = 0;
    int64_t entanglers = 0;
    int64_t measurements = 0;
    int64_t verifier_errors = 0;
    int64_t prover_errors = 0;

    OpCounts &operator+=(const OpCounts &o);
};

struct RoundResult {
    std::vector<uint8_t> raw;  // one bit per vertex
    OpCounts ops;
};

/// Simulates one slot. attack holds one letter per vertex, or is empty for an honest prover.
RoundResult run_round(const SecretKey &key, int slot, const RoundLayout &layout, std::span<const Pauli> attack,
                      const NoiseModel &noise, PhiloxStream &rng, int cap = kDefaultQubitCap);

/// Decrypted bits per slot over that slot's non-dummy vertices (live_vertices() order).
/// The target slot also has bridge corrections applied.
std::vector<std::vector<uint8_t>> decrypt(const SecretKey &key, const RoundLayout &layout,
                                          std::span<const std::vector<uint8_t>> raw);

struct SlotRecord {
    RoundKind kind = RoundKind::target;
    std::vector<uint8_t> raw;
    std::vector<uint8_t> decrypted;
    std::optional<bool> trap_pass;
};

struct RunRecord {
    std::vector<SlotRecord> slots;
    bool accept = false;
    std::vector<uint8_t> target_output;
    int attack_term = -1;
    OpCounts ops;

    uint64_t target_output_bits() const;
};

struct ProtocolOptions {
    int cap = kDefaultQubitCap;
};

/// One protocol run, a pure function of its arguments. Randomness comes from
/// streams (seed, repetition, purpose).
RunRecord run_protocol(const RoundLayout &layout, const Strategy &strategy, const NoiseModel &noise,
                       uint64_t seed, uint64_t repetition, const ProtocolOptions &options = {});

enum class ExecPolicy { serial, parallel };

struct SchemeVerdict {
    bool accept = false;
    int64_t repetitions = 0;
    double threshold = 0;
    int64_t passes = 0;
    double pass_fraction = 0;
    int64_t output_index = 0;
    std::vector<uint8_t> output;
    uint64_t seed = 0;
};

struct SchemeResult {
    SchemeVerdict verdict;
    std::vector<RunRecord> records;
};

/// M independent runs; accept iff the pass fraction is at least l.
SchemeResult run_scheme(const RoundLayout &layout, const Strategy &strategy, const NoiseModel &noise,
                        int64_t repetitions, double threshold, uint64_t seed,
                        ExecPolicy policy = ExecPolicy::parallel, const ProtocolOptions &options = {});

struct FidelityEstimate {
    int64_t samples = 0;
    double trap_fidelity = 0;  // F_t^2, trap pass frequency
    double trap_fidelity_stderr = 0;
    double target_fidelity = 0;  // F_c^2 from the Pauli overlaps on the target round
    double target_fidelity_stderr = 0;
    double gap = 0;
    double gap_stderr = 0;
    double distribution_fidelity = 0;  // classical fidelity of the decrypted target distribution
    double distribution_fidelity_stderr = 0;
};

/// Noiseless Monte Carlo over keys. Pauli attacks only.
FidelityEstimate estimate_fidelity_gap(const RoundLayout &layout, const Strategy &strategy, int64_t samples,
                                       uint64_t seed, ExecPolicy policy = ExecPolicy::parallel,
                                       const ProtocolOptions &options = {});

/// Exact decrypted target distribution for a fixed key and attack letters on the target slot.
Distribution decrypted_target_distribution(const SecretKey &key, const RoundLayout &layout,
                                           std::span<const Pauli> target_attack, int cap = kDefaultQubitCap);

/// (sum_x sqrt(p_x q_x))^2.
double classical_fidelity(const Distribution &p, const Distribution &q);

}  // namespace trapver

#endif
