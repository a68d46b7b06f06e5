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

#include <exception>
#include <stdexcept>

#include "trapver/protocol.hpp"

namespace trapver {

namespace {

constexpr uint64_t kSchemeRepetition = 0xFFFFFFFFu;

}  // namespace

SchemeResult run_scheme(const RoundLayout &layout, const Strategy &strategy, const NoiseModel &noise,
                        int64_t repetitions, double threshold, uint64_t seed, ExecPolicy policy,
                        const ProtocolOptions &options) {
    if (repetitions < 1) {
        throw std::invalid_argument("scheme needs at least one repetition");
    }
    if (!(threshold >= 0 && threshold <= 1)) {
        throw std::invalid_argument("acceptance fraction must lie in [0, 1]");
    }
    noise.validate();
    if (strategy) {
        strategy->validate(layout.num_rounds(), layout.graph(0).size());
    }

    SchemeResult out;
    out.records.resize(repetitions);
    std::exception_ptr failure;
    if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (int64_t i = 0; i < repetitions; i++) {
            try {
                out.records[i] = run_protocol(layout, strategy, noise, seed, static_cast<uint64_t>(i), options);
            } catch (...) {
#pragma omp critical(trapver_scheme_failure)
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    } else {
        for (int64_t i = 0; i < repetitions; i++) {
            out.records[i] = run_protocol(layout, strategy, noise, seed, static_cast<uint64_t>(i), options);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    SchemeVerdict &v = out.verdict;
    v.repetitions = repetitions;
    v.threshold = threshold;
    v.seed = seed;
    for (const auto &r : out.records) {
        v.passes += r.accept;
    }
    v.pass_fraction = static_cast<double>(v.passes) / static_cast<double>(repetitions);
    v.accept = v.pass_fraction >= threshold;
    PhiloxStream pick(seed, stream_id(kSchemeRepetition, StreamPurpose::scheme));
    v.output_index = static_cast<int64_t>(pick.below(static_cast<uint64_t>(repetitions)));
    v.output = out.records[v.output_index].target_output;
    return out;
}

}  // namespace trapver
