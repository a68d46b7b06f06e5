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

#include <benchmark/benchmark.h>

#include <random>

#include "trapver/kernels.hpp"
#include "trapver/protocol.hpp"

using namespace trapver;

namespace {

std::vector<Amplitude> random_state(int n) {
    std::mt19937 gen(1);
    std::normal_distribution<double> g;
    std::vector<Amplitude> v(size_t{1} << n);
    for (auto &a : v) {
        a = {g(gen), g(gen)};
    }
    return v;
}

template <void (*Cz)(std::span<Amplitude>, int, int)>
void bm_cz(benchmark::State &state) {
    auto amps = random_state(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Cz(amps, 0, static_cast<int>(state.range(0)) - 1);
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetBytesProcessed(state.iterations() * amps.size() * sizeof(Amplitude));
}

template <void (*OneQ)(std::span<Amplitude>, int, const Mat2 &)>
void bm_1q(benchmark::State &state) {
    auto amps = random_state(static_cast<int>(state.range(0)));
    const double s = 1 / std::sqrt(2.0);
    Mat2 h{s, s, s, -s};
    for (auto _ : state) {
        OneQ(amps, 3, h);
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetBytesProcessed(state.iterations() * amps.size() * sizeof(Amplitude));
}

template <Amplitude (*Trace)(const IsingTerms &)>
void bm_ising(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<std::pair<int, int>> bonds;
    std::vector<double> fields(n, 0.3);
    for (int i = 0; i + 1 < n; i++) {
        bonds.emplace_back(i, i + 1);
    }
    IsingTerms terms{n, bonds, 0.785, fields};
    for (auto _ : state) {
        benchmark::DoNotOptimize(Trace(terms));
    }
}

void bm_scheme(benchmark::State &state) {
    RoundLayout layout = RoundLayout::for_target(carve_target(5, 3), 1);
    NoiseModel noise{0.001, 0.001, {}};
    ExecPolicy policy = state.range(0) ? ExecPolicy::parallel : ExecPolicy::serial;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scheme(layout, std::nullopt, noise, 256, 0.9, 1, policy).verdict.passes);
    }
}

}  // namespace

BENCHMARK(bm_cz<kernels::serial::apply_cz>)->Name("cz/serial")->DenseRange(14, 22, 4);
BENCHMARK(bm_cz<kernels::omp::apply_cz>)->Name("cz/omp")->DenseRange(14, 22, 4);
BENCHMARK(bm_1q<kernels::serial::apply_1q>)->Name("1q/serial")->DenseRange(14, 22, 4);
BENCHMARK(bm_1q<kernels::omp::apply_1q>)->Name("1q/omp")->DenseRange(14, 22, 4);
BENCHMARK(bm_ising<kernels::serial::ising_trace>)->Name("ising/serial")->DenseRange(12, 20, 4);
BENCHMARK(bm_ising<kernels::omp::ising_trace>)->Name("ising/omp")->DenseRange(12, 20, 4);
BENCHMARK(bm_scheme)->Name("scheme")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
