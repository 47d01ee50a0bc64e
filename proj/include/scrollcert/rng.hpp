#pragma once

#include <cstdint>

namespace scrollcert {

// Deterministic splitmix64 stream. Reports must be byte-identical across
// platforms, so no std::uniform_int_distribution anywhere.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, n) via 128-bit multiply-high reduction.
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // Nonzero residue in [1, p).
    uint64_t nonzero_below(uint64_t p) { return 1 + below(p - 1); }

private:
    uint64_t state_;
};

// Stable mix used to derive retry seeds; recorded in certificates so any
// attempt can be replayed.
inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
    Rng r(seed ^ (0x517cc1b727220a95ULL * (salt + 1)));
    return r.next();
}

} // namespace scrollcert
