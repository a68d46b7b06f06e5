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

#include <array>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <vector>

#include "trapver/protocol.hpp"

namespace trapver {

namespace {

struct Moments {
    double mean = 0;
    double stderr_ = 0;
};

Moments moments(const std::vector<double> &xs) {
    Moments m;
    const double n = static_cast<double>(xs.size());
    if (xs.empty()) {
        return m;
    }
    for (double x : xs) {
        m.mean += x;
    }
    m.mean /= n;
    if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) {
            ss += (x - m.mean) * (x - m.mean);
        }
        m.stderr_ = std::sqrt(ss / (n - 1) / n);
    }
    return m;
}

// |<+|P|+>|^2 for each Pauli.
std::array<double, 4> plus_overlaps() {
    std::array<double, 4> out{};
    StateVector plus = prepare_qubit(PlusState{});
    for (Pauli p : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
        StateVector moved = plus;
        moved.apply_pauli(0, p);
        Amplitude ip = std::conj(plus.amplitude(0)) * moved.amplitude(0) +
                       std::conj(plus.amplitude(1)) * moved.amplitude(1);
        out[static_cast<int>(p)] = std::norm(ip);
    }
    return out;
}

}  // namespace

double classical_fidelity(const Distribution &p, const Distribution &q) {
    if (p.num_bits() != q.num_bits()) {
        throw std::invalid_argument("distributions have different string lengths");
    }
    double bc = 0;
    for (const auto &[k, pk] : p.entries()) {
        bc += std::sqrt(pk * q.probability(k));
    }
    return bc * bc;
}

FidelityEstimate estimate_fidelity_gap(const RoundLayout &layout, const Strategy &strategy, int64_t samples,
                                       uint64_t seed, ExecPolicy policy, const ProtocolOptions &options) {
    if (samples < 1) {
        throw std::invalid_argument("need at least one sample");
    }
    if (strategy && !strategy->is_pauli()) {
        throw std::invalid_argument("fidelity estimation supports Pauli-mixture attacks only");
    }
    const Distribution honest = sampler_distribution(layout.target(), options.cap);
    const auto overlaps = plus_overlaps();
    const NoiseModel quiet;

    std::vector<double> trap(samples), target(samples), dist(samples), diff(samples);
    std::exception_ptr failure;
    auto one = [&](int64_t i) {
        RunRecord rec = run_protocol(layout, strategy, quiet, seed, static_cast<uint64_t>(i), options);
        PhiloxStream key_rng(seed, stream_id(static_cast<uint64_t>(i), StreamPurpose::key));
        SecretKey key = keygen(layout, key_rng);
        const int slot = key.target_slot(layout);
        std::vector<Pauli> letters;
        if (strategy) {
            letters = strategy->pauli().terms[rec.attack_term].letters[slot];
        }
        double fc = 1;
        if (!letters.empty()) {
            for (int v : layout.target().live_vertices()) {
                fc *= overlaps[static_cast<int>(letters[v])];
            }
        }
        trap[i] = rec.accept ? 1.0 : 0.0;
        target[i] = fc;
        diff[i] = trap[i] - fc;
        dist[i] = classical_fidelity(decrypted_target_distribution(key, layout, letters, options.cap), honest);
    };
    if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (int64_t i = 0; i < samples; i++) {
            try {
                one(i);
            } catch (...) {
#pragma omp critical(trapver_fidelity_failure)
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    } else {
        for (int64_t i = 0; i < samples; i++) {
            one(i);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    FidelityEstimate est;
    est.samples = samples;
    auto t = moments(trap), c = moments(target), g = moments(diff), d = moments(dist);
    est.trap_fidelity = t.mean;
    est.trap_fidelity_stderr = t.stderr_;
    est.target_fidelity = c.mean;
    est.target_fidelity_stderr = c.stderr_;
    est.gap = g.mean;
    est.gap_stderr = g.stderr_;
    est.distribution_fidelity = d.mean;
    est.distribution_fidelity_stderr = d.stderr_;
    return est;
}

}  // namespace trapver
