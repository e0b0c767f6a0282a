/*
 * Copyright (C) 2026 urbanpath contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace upath
{

using Engine = std::mt19937_64;

inline constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a, 64 bit.
inline constexpr std::uint64_t hash_string(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/**
 * Named, keyed random stream.
 *
 * Every stochastic concern (population, network, plans, economy, fixtures)
 * draws from its own stream, and within a concern each entity gets its own
 * key. An agent's draws therefore depend only on (seed, stream, key) and not
 * on how many other agents exist or in which order they were processed, so
 * paired scenario runs see common random numbers.
 */
inline Engine make_stream(std::uint64_t seed, std::string_view stream, std::uint64_t key = 0)
{
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ hash_string(stream));
    s = splitmix64(s ^ key);
    return Engine(s);
}

/// Beta(a, b) via the two-gamma construction.
template <class Gen>
double draw_beta(Gen& gen, double a, double b)
{
    std::gamma_distribution<double> ga(a, 1.0);
    std::gamma_distribution<double> gb(b, 1.0);
    const double x = ga(gen);
    const double y = gb(gen);
    return x / (x + y);
}

} // namespace upath
