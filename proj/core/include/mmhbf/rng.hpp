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

#ifndef MMHBF_RNG_HPP
#define MMHBF_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mmhbf {

using Rng = std::mt19937_64;

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream key derivation: fold each key component into the campaign seed.
// Links use (seed, drop, tp, user); placement uses (seed, drop, kPlacementStream, 0).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) noexcept {
    std::uint64_t h = mix64(seed);
    for (const auto k : keys)
        h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
    return h;
}

inline constexpr std::uint64_t kPlacementStream = 0xffffffffffff0001ULL;

inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    return Rng(derive_seed(seed, keys));
}

} // namespace mmhbf

#endif
