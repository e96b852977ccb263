// SPDX-License-Identifier: Apache-2.0
//
// mmhbf: hybrid beamforming simulator for multi-cell millimeter-wave MIMO
// Copyright (C) 2026 The mmhbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmhbf/mmhbf.hpp"

#include <benchmark/benchmark.h>

#include <array>

using namespace mmhbf;

namespace {

ComplexMatrix gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            a(r, c) = {n(rng), n(rng)};
    return a;
}

void BM_Svd(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(1));
    const ComplexMatrix a = gaussian(static_cast<std::size_t>(state.range(0)), n, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(svd(a));
}
// 8x256 is one full link, 8x4 and 16x4 the effective channels.
BENCHMARK(BM_Svd)->Args({8, 4})->Args({16, 4})->Args({8, 256})->Unit(benchmark::kMicrosecond);

void BM_HermGenEig(benchmark::State &state) {
    const ComplexMatrix g = gaussian(4, 4, 2);
    const ComplexMatrix h = gaussian(8, 4, 3);
    const ComplexMatrix a = adjoint_times(h, h);
    ComplexMatrix b = adjoint_times(g, g);
    for (std::size_t i = 0; i < 4; ++i)
        b(i, i) += 1.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(herm_gen_eig(a, b));
}
BENCHMARK(BM_HermGenEig);

void BM_GenerateChannel(benchmark::State &state) {
    const ChannelProfile profile =
        state.range(0) == 0 ? ChannelProfile::few_strong_lobes() : ChannelProfile::many_weak_clusters();
    const UraConfig tp = UraConfig::transmission_point();
    const UraConfig ue = UraConfig::user_equipment();
    UserPosition u;
    u.position = {25.0, 20.0};
    const LinkGeometry g = link_geometry(SectorLayout{}, u);
    Rng rng(4);
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_channel(tp, ue, g, profile, 28.0, rng));
    state.SetLabel(profile.name);
}
BENCHMARK(BM_GenerateChannel)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_Drop(benchmark::State &state) {
    CampaignConfig cfg;
    cfg.users_per_cell = static_cast<std::size_t>(state.range(0));
    cfg.seed = 5;
    const std::array<Scheme, 3> schemes{Scheme::Baseline, Scheme::Lsp, Scheme::Slnr};
    std::size_t i = 0;
    for (auto _ : state) {
        SystemDrop drop = generate_drop(cfg, i++);
        design_drop(cfg, drop, schemes);
        benchmark::DoNotOptimize(drop.weights.data());
    }
}
BENCHMARK(BM_Drop)->Arg(3)->Arg(12)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
