#pragma once

#include <cstdint>
#include <random>

#include "isocodec/bignat.hpp"

namespace isocodec {

// All randomness flows through mt19937_64 seeded via splitmix64 so that runs
// are reproducible across platforms and substreams are decorrelated.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

// Independent stream index `k` of a master seed (trial substreams).
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t k) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(k + 1)));
}

// Uniform in [0, bound) by rejection; avoids uniform_int_distribution whose
// output sequence is implementation-defined.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(bound - 1 | 1);
    for (;;) {
        std::uint64_t v = rng() & mask;
        if (v < bound) return v;
    }
}

inline bool uniform_bit(std::mt19937_64& rng) { return rng() & 1u; }

inline BigNat uniform_bignat_below(std::mt19937_64& rng, const BigNat& bound) {
    if (bound <= 1) return 0;
    unsigned bits = bit_length(bound - 1);
    for (;;) {
        BigNat v = 0;
        unsigned got = 0;
        while (got < bits) {
            unsigned take = std::min(64u, bits - got);
            std::uint64_t w = rng() & (take == 64 ? ~std::uint64_t{0}
                                                  : ((std::uint64_t{1} << take) - 1));
            v <<= take;
            v |= w;
            got += take;
        }
        if (v < bound) return v;
    }
}

}  // namespace isocodec
