#include "poolgame/kernels/revision.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace poolgame::kernels {

namespace {

// Lane-wise 32x32 -> (lo32, hi32) products for 8 packed u32. mul_epu32 only
// covers the even lanes, so the odd lanes run through a shifted copy.
inline void mulhilo8(__m256i a, __m256i mul, __m256i& lo, __m256i& hi) {
    const __m256i even = _mm256_mul_epu32(a, mul);
    const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), mul);
    lo = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA);
    hi = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
}

// ((hi << 32 | lo) >> 12) * 2^-52 for 4 lanes, matching philox::uniform52
// bit for bit: the 52-bit value converts exactly and the scale is a power
// of two.
inline __m256d uniform52x4(__m128i hi, __m128i lo) {
    const __m256i exp52 = _mm256_set1_epi64x(0x4330000000000000LL);  // double(2^52)
    __m256i v = _mm256_or_si256(_mm256_slli_epi64(_mm256_cvtepu32_epi64(hi), 32),
                                _mm256_cvtepu32_epi64(lo));
    v = _mm256_srli_epi64(v, 12);
    const __m256d d = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(v, exp52)),
                                    _mm256_castsi256_pd(exp52));
    return _mm256_mul_pd(d, _mm256_set1_pd(0x1.0p-52));
}

}  // namespace

void revise_avx2(std::span<std::uint32_t> assignments, const RoundContext& ctx) {
    const std::uint32_t m = ctx.pools;
    const double* prob = ctx.switch_prob;

    const __m256i mul0 = _mm256_set1_epi32(static_cast<int>(philox::kMul0));
    const __m256i mul1 = _mm256_set1_epi32(static_cast<int>(philox::kMul1));
    const __m256i weyl0 = _mm256_set1_epi32(static_cast<int>(philox::kWeyl0));
    const __m256i weyl1 = _mm256_set1_epi32(static_cast<int>(philox::kWeyl1));
    const __m256i seed_lo = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(ctx.seed)));
    const __m256i seed_hi =
        _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(ctx.seed >> 32)));
    const __m256i round_lo =
        _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(ctx.round)));
    const __m256i round_hi =
        _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(ctx.round >> 32)));
    const __m256i pools_v = _mm256_set1_epi32(static_cast<int>(m));
    const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
    const __m256i pick_even = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);

    const std::size_t vec_end = assignments.size() / 8 * 8;
    for (std::size_t i = 0; i < vec_end; i += 8) {
        // Philox4x32-10 for 8 miners: counter words (round, miner, 0).
        __m256i c0 = round_lo;
        __m256i c1 = round_hi;
        __m256i c2 = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(i)), lane);
        __m256i c3 = _mm256_setzero_si256();
        __m256i k0 = seed_lo;
        __m256i k1 = seed_hi;
        for (int round = 0; round < 10; ++round) {
            __m256i lo0, hi0, lo1, hi1;
            mulhilo8(c0, mul0, lo0, hi0);
            mulhilo8(c2, mul1, lo1, hi1);
            c0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), k0);
            c1 = lo1;
            c2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), k1);
            c3 = lo0;
            k0 = _mm256_add_epi32(k0, weyl0);
            k1 = _mm256_add_epi32(k1, weyl1);
        }

        // candidate = (word0 * pools) >> 32
        __m256i cand_lo_unused, candidate;
        mulhilo8(c0, pools_v, cand_lo_unused, candidate);

        const __m256d u_lo = uniform52x4(_mm256_castsi256_si128(c2), _mm256_castsi256_si128(c3));
        const __m256d u_hi =
            uniform52x4(_mm256_extracti128_si256(c2, 1), _mm256_extracti128_si256(c3, 1));

        const __m256i current =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(assignments.data() + i));
        const __m256i index = _mm256_add_epi32(_mm256_mullo_epi32(current, pools_v), candidate);
        const __m256d p_lo = _mm256_i32gather_pd(prob, _mm256_castsi256_si128(index), 8);
        const __m256d p_hi = _mm256_i32gather_pd(prob, _mm256_extracti128_si256(index, 1), 8);

        const __m256i take_lo = _mm256_castpd_si256(_mm256_cmp_pd(u_lo, p_lo, _CMP_LT_OQ));
        const __m256i take_hi = _mm256_castpd_si256(_mm256_cmp_pd(u_hi, p_hi, _CMP_LT_OQ));
        // Squeeze the two 4x64 masks into one 8x32 mask in miner order.
        const __m128i m_lo =
            _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(take_lo, pick_even));
        const __m128i m_hi =
            _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(take_hi, pick_even));
        const __m256i mask = _mm256_set_m128i(m_hi, m_lo);

        const __m256i next = _mm256_blendv_epi8(current, candidate, mask);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(assignments.data() + i), next);
    }
    for (std::size_t i = vec_end; i < assignments.size(); ++i) {
        revise_one(assignments.data(), i, ctx);
    }
}

}  // namespace poolgame::kernels

#endif  // x86-64
