#pragma once

#include <array>
#include <cstdint>

namespace ornstein {

/// Philox4x32-10 counter-based generator. Stateless: block i of the stream is
/// a pure function of (seed, stream, i), so sample schedules are reproducible
/// under any work partition.
struct Philox4x32 {
    static constexpr uint32_t kMul0 = 0xD2511F53u;
    static constexpr uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<uint32_t, 4> block(uint64_t seed, uint64_t stream, uint64_t counter) {
        uint32_t c0 = static_cast<uint32_t>(counter);
        uint32_t c1 = static_cast<uint32_t>(counter >> 32);
        uint32_t c2 = static_cast<uint32_t>(stream);
        uint32_t c3 = static_cast<uint32_t>(stream >> 32);
        uint32_t k0 = static_cast<uint32_t>(seed);
        uint32_t k1 = static_cast<uint32_t>(seed >> 32);
        for (int round = 0; round < 10; ++round) {
            uint64_t p0 = static_cast<uint64_t>(kMul0) * c0;
            uint64_t p1 = static_cast<uint64_t>(kMul1) * c2;
            uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
            uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
            uint32_t n0 = hi1 ^ c1 ^ k0;
            uint32_t n1 = lo1;
            uint32_t n2 = hi0 ^ c3 ^ k1;
            uint32_t n3 = lo0;
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return {c0, c1, c2, c3};
    }

    /// Two independent 64-bit words per counter value.
    static std::array<uint64_t, 2> pair64(uint64_t seed, uint64_t stream, uint64_t counter) {
        auto b = block(seed, stream, counter);
        return {(static_cast<uint64_t>(b[1]) << 32) | b[0],
                (static_cast<uint64_t>(b[3]) << 32) | b[2]};
    }
};

}  // namespace ornstein
