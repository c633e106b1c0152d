#pragma once

#include <cstdint>
#include <random>

namespace dfgof {

// splitmix64 finalizer, used to decorrelate derived seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-replicate stream derived from (seed, index): results never depend on
// which thread executed which replicate.
inline std::mt19937_64 replicate_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(mix64(mix64(seed) ^ mix64(index + 0x51ed2701ULL)));
}

}  // namespace dfgof
