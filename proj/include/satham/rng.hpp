#pragma once

#include <cstdint>
#include <random>

namespace satham {

// splitmix64, used to derive independent deterministic substreams so that
// per-task seeds do not collide when tasks are enumerated in any order.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::mt19937_64 substream(uint64_t seed, uint64_t a = 0, uint64_t b = 0) {
    uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ (0xa0761d6478bd642full ^ a));
    s = splitmix64(s ^ (0xe7037ed1a0b428dbull ^ b));
    return std::mt19937_64(s);
}

inline double uniform_pm1(std::mt19937_64& g) {
    return std::uniform_real_distribution<double>(-1.0, 1.0)(g);
}

inline double uniform01(std::mt19937_64& g) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(g);
}

}  // namespace satham
