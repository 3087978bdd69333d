#pragma once

#include <array>
#include <cstdint>

namespace poolgame::philox {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
// each (128-bit counter, 64-bit key) pair yields an independent 128-bit
// block. The revision kernels key it by simulation seed and count it by
// (round, miner), which is what makes scalar and SIMD execution, and any
// parallel schedule, produce identical streams.

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> c, std::uint64_t key) {
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(c[0]) * kMul0;
        const std::uint64_t p1 = static_cast<std::uint64_t>(c[2]) * kMul1;
        c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0,
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1,
             static_cast<std::uint32_t>(p0)};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return c;
}

// Choice in [0, m) by multiply-shift; bias is m/2^32, irrelevant for small m.
inline std::uint32_t bounded(std::uint32_t word, std::uint32_t m) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(word) * m) >> 32);
}

// 52-bit uniform in [0, 1). The value fits the double mantissa exactly, so
// the scalar conversion and the SIMD exponent-trick conversion agree bitwise.
inline double uniform52(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t v = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 12;
    return static_cast<double>(v) * 0x1.0p-52;
}

}  // namespace poolgame::philox
