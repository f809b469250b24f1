#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fbl {

/// Derives the seed of an independent stream from a base seed and stream
/// coordinates (restart index, tuple size, ...), via splitmix64 finalization.
inline std::uint64_t stream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t state = mix(seed);
    for (auto s : stream) state = mix(state ^ mix(s));
    return state;
}

using Rng = std::mt19937_64;

inline Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
    return Rng(stream_seed(seed, stream));
}

}  // namespace fbl
