#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "scrollcert/fp.hpp"

namespace scrollcert {

// Raw modular arithmetic for finite-field scan loops; primes here are small
// (< 2^11) so products fit in 64 bits with room to spare.
struct ScanField {
    uint32_t p;
    std::vector<uint32_t> inv; // inverse table, inv[0] unused

    explicit ScanField(uint32_t prime) : p(prime), inv(prime, 0) {
        for (uint32_t a = 1; a < p; ++a) inv[a] = Fp(a, p).inverse().value();
    }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
    }
    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const {
        return a >= b ? a - b : a + p - b;
    }
};

using Key6 = std::array<uint16_t, 6>;

struct Key6Hash {
    std::size_t operator()(const Key6& k) const {
        uint64_t h = 0xcbf29ce484222325ULL;
        for (uint16_t v : k) {
            h ^= v;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

inline uint64_t pack_param3(const std::array<uint32_t, 3>& z) {
    return (static_cast<uint64_t>(z[0]) << 32) |
           (static_cast<uint64_t>(z[1]) << 16) | z[2];
}

inline std::array<uint32_t, 3> unpack_param3(uint64_t k) {
    return {static_cast<uint32_t>(k >> 32),
            static_cast<uint32_t>((k >> 16) & 0xffff),
            static_cast<uint32_t>(k & 0xffff)};
}

} // namespace scrollcert
